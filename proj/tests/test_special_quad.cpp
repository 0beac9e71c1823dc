// test_special_quad.cpp — Dawson function and the adaptive quadrature engines
#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "mfgs/errors.hpp"
#include "mfgs/quadrature.hpp"
#include "mfgs/special.hpp"

using namespace mfgs;
using mfgs::quad::integrate_finite;
using mfgs::quad::integrate_semi_infinite;
using mfgs::quad::QuadratureSettings;

namespace {

// e^{−x²}∫_0^x e^{u²}du = ∫_0^x e^{(u−x)(u+x)}du in extended precision
double dawson_oracle(double x) {
  boost::math::quadrature::tanh_sinh<long double> ts;
  const long double lx = x;
  return static_cast<double>(ts.integrate([lx](long double u) { return std::exp((u - lx) * (u + lx)); }, 0.0L, lx));
}

// composite 20-point Gauss–Legendre on n equal panels
template <class F>
double composite_gauss(F f, double a, double b, int n) {
  double sum = 0.0;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * h, a + (i + 1) * h);
  return sum;
}

}  // namespace

TEST(Dawson, Zero) { EXPECT_EQ(dawson(0.0), 0.0); }

TEST(Dawson, KnownValueAtOne) { EXPECT_NEAR(dawson(1.0), 0.538079506912768, 1e-15); }

TEST(Dawson, AsymptoticAtTen) { EXPECT_LE(std::abs(dawson(10.0) - 0.05), 1.0 / (4 * 1000.0) * 1.05); }

TEST(Dawson, MatchesDefiningIntegral) {
  for (double x = 0.0; x <= 50.0; x += 0.173) EXPECT_NEAR(dawson(x), dawson_oracle(x), 1e-12) << "x=" << x;
  for (double x : {0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 5.999, 6.0, 6.001, 10.0, 25.0})
    EXPECT_NEAR(dawson(x), dawson_oracle(x), 1e-12) << "x=" << x;
}

TEST(Dawson, Odd) {
  for (double x = 0.0; x <= 60.0; x += 0.37) EXPECT_EQ(dawson(-x), -dawson(x));
}

TEST(Dawson, SingleMaximum) {
  for (double x = 0.0; x < 0.92 - 1e-9; x += 0.01) EXPECT_LT(dawson(x), dawson(x + 0.01)) << x;
  for (double x = 0.93; x < 10.0 - 1e-9; x += 0.01) EXPECT_GT(dawson(x), dawson(x + 0.01)) << x;
}

TEST(Dawson, AsymptoticBound) {
  for (int i = 30; i <= 500; ++i) {
    const double x = 0.1 * i;
    EXPECT_LE(std::abs(dawson(x) - 0.5 / x), 0.5 / (x * x * x)) << x;
  }
}

TEST(Dawson, RejectsNonFinite) {
  EXPECT_THROW(dawson(std::numeric_limits<double>::quiet_NaN()), ValidationError);
  EXPECT_THROW(dawson(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(Settings, Validation) {
  QuadratureSettings s;
  s.rel_tol = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.max_subdivisions = 0;
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(IntegrateFinite, Constant) {
  const auto r = integrate_finite([](double) { return 1.0; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_GE(r.error_estimate, 0.0);
  EXPECT_GT(r.evaluations, 0);
}

TEST(IntegrateFinite, Exponential) {
  const auto r = integrate_finite([](double u) { return std::exp(u); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
}

TEST(IntegrateFinite, BoundaryLayer) {
  auto f = [](double u) { return std::exp(-100.0 * u * (1.0 - u)); };
  const double ref = composite_gauss(f, 0.0, 1.0, 200);
  EXPECT_NEAR(composite_gauss(f, 0.0, 1.0, 20), ref, 1e-9);  // refinement oracle is converged
  const std::vector<double> br{1e-4, 1e-3, 1e-2, 1e-1, 0.9, 0.99, 0.999, 0.9999};
  EXPECT_NEAR(integrate_finite(f, 0.0, 1.0, {}, br).value, ref, 1e-9);
  EXPECT_NEAR(integrate_finite(f, 0.0, 1.0).value, ref, 1e-9);
}

TEST(IntegrateFinite, ComplexAndVectorValues) {
  const auto c = integrate_finite([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 1.0);
  EXPECT_NEAR(std::abs(c.value - std::complex<double>(std::sin(1.0), 1.0 - std::cos(1.0))), 0.0, 1e-14);
  const auto v = integrate_finite(
      [](double x) {
        Eigen::Vector2d r(x, x * x);
        return r;
      },
      0.0, 3.0);
  EXPECT_NEAR(v.value(0), 4.5, 1e-13);
  EXPECT_NEAR(v.value(1), 9.0, 1e-13);
}

TEST(IntegrateFinite, Additive) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const double p = d(rng), q = d(rng), w = 3.0 + d(rng);
    auto f = [&](double x) { return std::sin(w * x + p) * std::exp(q * x); };
    const double a = -1.0, b = 2.0, c = 0.3 + 0.2 * d(rng);
    const auto whole = integrate_finite(f, a, b), left = integrate_finite(f, a, c), right = integrate_finite(f, c, b);
    EXPECT_LE(std::abs(whole.value - left.value - right.value),
              whole.error_estimate + left.error_estimate + right.error_estimate + 1e-15);
  }
}

TEST(IntegrateFinite, EndpointSingularity) {
  const auto r = integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(IntegrateFinite, EmptyAndReversed) {
  EXPECT_EQ(integrate_finite([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_THROW(integrate_finite([](double) { return 1.0; }, 2.0, 1.0), ValidationError);
}

TEST(IntegrateFinite, SubdivisionLimitCarriesEstimate) {
  QuadratureSettings s;
  s.max_subdivisions = 3;
  s.rel_tol = 1e-14;
  try {
    integrate_finite([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, s);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate().real()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(IntegrateSemiInfinite, Exponential) {
  const auto r = integrate_semi_infinite([](double w) { return std::exp(-w); }, 0.0,
                                         [](double w) { return std::exp(-w); });
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(IntegrateSemiInfinite, LorentzianNormalization) {
  const double wc = 0.25;
  auto f = [wc](double w) { return 2.0 / std::numbers::pi * wc / (wc * wc + w * w); };
  const auto r = integrate_semi_infinite(f, 0.0, f, {}, wc);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(IntegrateSemiInfinite, DampedOscillation) {
  // ∫ ω e^{−ω/5} cos ω dω = Re (1/5 − i)^{−2}
  const double ref = std::real(1.0 / std::pow(std::complex<double>(0.2, -1.0), 2));
  QuadratureSettings s;
  s.max_subdivisions = 5000;
  const auto r = integrate_semi_infinite([](double w) { return w * std::exp(-w / 5.0) * std::cos(w); }, 0.0,
                                         [](double w) { return w * std::exp(-w / 5.0); }, s, 5.0);
  EXPECT_NEAR(r.value, ref, 1e-8 * std::abs(ref));
}

TEST(IntegrateSemiInfinite, DivergentEnvelope) {
  EXPECT_THROW(integrate_semi_infinite([](double) { return 1.0; }, 0.0, [](double) { return 1.0; }), NumericalError);
}
