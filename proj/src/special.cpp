// special.cpp — Dawson function: power series, Rybicki sampling, asymptotic series
#include "mfgs/special.hpp"

#include <array>
#include <cmath>

#include "mfgs/errors.hpp"

namespace mfgs {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kH = 0.2;
constexpr int kTerms = 24;

// |x| < 1: Σ (-2x²)^k x / (2k+1)!!
double series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 60; ++k) {
    term *= -2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

const std::array<double, kTerms>& rybicki_weights() {
  static const std::array<double, kTerms> c = [] {
    std::array<double, kTerms> w{};
    for (int i = 0; i < kTerms; ++i) {
      const double t = (2.0 * i + 1.0) * kH;
      w[i] = std::exp(-t * t);
    }
    return w;
  }();
  return c;
}

// 1 ≤ x ≤ 6: sampled-exponential sum around the nearest even grid point.
double rybicki(double x) {
  const auto& c = rybicki_weights();
  const double n0 = 2.0 * std::round(0.5 * x / kH);
  const double xp = x - n0 * kH;
  double e1 = std::exp(2.0 * xp * kH);
  const double e2 = e1 * e1;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < kTerms; ++i) {
    sum += c[i] * (e1 / d1 + 1.0 / (d2 * e1));
    d1 += 2.0;
    d2 -= 2.0;
    e1 *= e2;
  }
  return kInvSqrtPi * std::exp(-xp * xp) * sum;
}

// x > 6: (1/2x) Σ (2k-1)!!/(2x²)^k, stopped at the smallest term.
double asymptotic(double x) {
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * inv;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / (2.0 * x);
}

}  // namespace

double dawson(double x) {
  if (!std::isfinite(x)) throw ValidationError("dawson: argument must be finite");
  const double ax = std::abs(x);
  double r;
  if (ax < 1.0)
    return series(x);
  else if (ax <= 6.0)
    r = rybicki(ax);
  else
    r = asymptotic(ax);
  return x < 0 ? -r : r;
}

}  // namespace mfgs
