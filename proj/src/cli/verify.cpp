// verify.cpp — self-checks run by `mfgs verify`, reported as JSON
#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "mfgs/cli.hpp"
#include "mfgs/errors.hpp"
#include "mfgs/special.hpp"

namespace mfgs::cli {

namespace {

using nlohmann::json;

json check_trace_identity(const VerifyConfig& cfg) {
  const double beta = 1.0;
  const auto bd = oracle::BathDiscretization::explicit_modes({{0.4, 1.0}}, cfg.fock_cutoff);
  double worst = 0.0;
  int flagged = 0, cases = 0;
  json rows = json::array();
  for (double lambda : {0.5, 1.0, 1.5, 2.0, 2.5})
    for (int i = 0; i < 5; ++i) {
      const double u = beta * i / 4.0;
      const auto c = oracle::verify_trace_identity(bd, 1.0, -1.0, lambda, beta, u, cfg.kernel);
      worst = std::max(worst, std::isfinite(c.relative_error) ? c.relative_error : INFINITY);
      flagged += c.truncation_flag;
      ++cases;
      rows.push_back({{"lambda", lambda}, {"u", u}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"relative_error", c.relative_error}});
    }
  const bool ok = worst <= cfg.trace_tolerance && flagged == 0;
  return {{"passed", ok}, {"max_error", worst}, {"tolerance", cfg.trace_tolerance}, {"cases", cases},
          {"truncation_flags", flagged}, {"rows", rows}};
}

HermitianMatrix random_hermitian(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(d(rng), i == j ? 0.0 : d(rng));
  return HermitianMatrix(Matrix((m + m.adjoint()) / 2.0));
}

json check_hermiticity(const VerifyConfig& cfg) {
  std::mt19937 rng(cfg.seed);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  quad::QuadratureSettings q;
  q.rel_tol = 1e-12;
  double worst = 0.0;
  int cases = 0;
  for (int s = 0; s < cfg.random_systems; ++s) {
    const int n = dim(rng);
    const SystemSpec sys(random_hermitian(rng, n), random_hermitian(rng, n));
    const double wc = 0.1 + 0.9 * unit(rng);
    const auto sd = SpectralDensity::lorentz_drude(1.0, wc);
    const BathParams bath{0.5 + 1.5 * unit(rng), std::sqrt(0.5 + 4.5 * unit(rng))};
    for (Convention conv : {Convention::Renormalized, Convention::Natural}) {
      const auto p = zeroth_order_populations(sys, bath, conv, sd);
      for (std::size_t l = 0; l < sys.dim(); ++l)
        for (std::size_t l2 = l + 1; l2 < sys.dim(); ++l2) {
          std::vector<std::pair<double, double>> pairs{
              {f_high_t(sys, bath, sd, l, l2, conv), f_high_t(sys, bath, sd, l2, l, conv)},
              {f_series(sys, bath, sd, l, l2, conv), f_series(sys, bath, sd, l2, l, conv)}};
          if (conv == Convention::Renormalized)
            pairs.push_back({f_exact(sys, bath, sd, l, l2, q, conv).value, f_exact(sys, bath, sd, l2, l, q, conv).value});
          for (const auto& [f12, f21] : pairs) {
            const double a = p[l] * f12, b = p[l2] * f21;
            const double scale = std::max(std::abs(a), std::abs(b));
            worst = std::max(worst, scale > 0.0 ? std::abs(a - b) / scale : 0.0);
            ++cases;
          }
        }
    }
  }
  const bool ok = worst <= cfg.hermiticity_tolerance;
  return {{"passed", ok}, {"max_error", worst}, {"tolerance", cfg.hermiticity_tolerance}, {"cases", cases},
          {"systems", cfg.random_systems}, {"seed", cfg.seed}};
}

json check_kernel_symmetry(const VerifyConfig& cfg) {
  const double beta = 1.0, tol = 1e-10;
  double worst = 0.0;
  int cases = 0;
  for (const auto& sd : {SpectralDensity::lorentz_drude(1.0, 0.25), SpectralDensity::ohmic(4.0, 0.25),
                         SpectralDensity::discrete({{0.4, 1.0}, {0.2, 2.5}})}) {
    auto k = [&](double u) { return cfg.kernel ? cfg.kernel(sd, beta, u) : spectral::overlap_kernel(sd, beta, u); };
    double kmax = 0.0;
    std::vector<double> diffs;
    for (int i = 0; i <= 8; ++i) {
      const double u = beta * i / 8.0;
      const double a = k(u), b = k(beta - u);
      kmax = std::max({kmax, std::abs(a), std::abs(b)});
      diffs.push_back(std::abs(a - b));
      ++cases;
    }
    for (double d : diffs) worst = std::max(worst, kmax > 0.0 ? d / kmax : d);
  }
  return {{"passed", worst <= tol}, {"max_error", worst}, {"tolerance", tol}, {"cases", cases}};
}

json check_dawson() {
  const double tol = 1e-12;
  double worst = 0.0;
  int cases = 0;
  quad::QuadratureSettings q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-300;
  for (double x : {0.05, 0.5, 0.9, 1.0, 1.5, 3.0, 5.9, 6.1, 10.0, 25.0}) {
    const double ref = quad::integrate_finite([x](double t) { return std::exp((t - x) * (t + x)); }, 0.0, x, q).value;
    const double d = dawson(x);
    worst = std::max({worst, std::abs(d - ref) / std::abs(ref), std::abs(dawson(-x) + d) / std::abs(ref)});
    ++cases;
  }
  return {{"passed", worst <= tol}, {"max_error", worst}, {"tolerance", tol}, {"cases", cases}};
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& cfg) {
  if (cfg.trace_tolerance <= 0.0 || cfg.hermiticity_tolerance <= 0.0)
    throw ValidationError("verify: tolerances must be > 0");
  if (cfg.fock_cutoff < 1 || cfg.random_systems < 0) throw ValidationError("verify: invalid configuration");
  json checks = json::object();
  bool passed = true;
  for (const auto& name : cfg.checks) {
    json r;
    if (name == "trace_identity") r = check_trace_identity(cfg);
    else if (name == "hermiticity") r = check_hermiticity(cfg);
    else if (name == "kernel_symmetry") r = check_kernel_symmetry(cfg);
    else if (name == "dawson") r = check_dawson();
    else throw ValidationError("verify: unknown check '" + name + "'");
    passed = passed && r["passed"].get<bool>();
    checks[name] = std::move(r);
  }
  json report{{"passed", passed}, {"checks", checks}};
  return {report.dump(2), passed};
}

}  // namespace mfgs::cli
