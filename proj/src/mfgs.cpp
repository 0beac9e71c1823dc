// mfgs.cpp — populations, coherence factors and assembly of the corrected state
#include "mfgs/mfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgs/errors.hpp"
#include "mfgs/special.hpp"

namespace mfgs {

namespace {

constexpr double kMaxExponent = 700.0;

void check_pair(const SystemSpec& sys, std::size_t l, std::size_t l2) {
  if (l >= sys.dim() || l2 >= sys.dim()) throw ValidationError("coherence factor: index out of range");
  if (l == l2) throw ValidationError("coherence factor: requires l != l2");
}

double gap_for(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
               std::size_t l, std::size_t l2, Convention conv) {
  if (conv == Convention::Renormalized) return sys.gap(l, l2);
  const RealVector e = pseudo_energies(sys, bath, conv, sd);
  return e(l) - e(l2);
}

double exp_checked(double x, const char* where) {
  if (x > kMaxExponent) throw OverflowError(std::string(where) + ": e^{βω} overflows", x);
  return std::exp(x);
}

}  // namespace

std::string to_string(CorrectionMethod m) {
  switch (m) {
    case CorrectionMethod::ExactQuadrature: return "exact";
    case CorrectionMethod::HighTemperatureDawson: return "high-t";
    case CorrectionMethod::UltrastrongSeries: return "series";
  }
  return "unknown";
}

std::string to_string(Convention c) {
  return c == Convention::Renormalized ? "renormalized" : "natural";
}

RealVector pseudo_energies(const SystemSpec& sys, const BathParams& bath, Convention conv,
                           const SpectralDensity& sd) {
  bath.validate();
  RealVector e(sys.dim());
  const double shift =
      conv == Convention::Natural ? bath.lambda * bath.lambda * spectral::reorganization_energy(sd) : 0.0;
  for (std::size_t l = 0; l < sys.dim(); ++l) e(l) = sys.h(l) - shift * sys.a_value(l) * sys.a_value(l);
  return e;
}

std::vector<double> zeroth_order_populations(const SystemSpec& sys, const BathParams& bath,
                                             Convention conv, const SpectralDensity& sd) {
  const RealVector e = pseudo_energies(sys, bath, conv, sd);
  const double e0 = e.minCoeff();
  std::vector<double> p(sys.dim());
  double z = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) z += p[l] = std::exp(-bath.beta * (e(l) - e0));
  for (double& x : p) x /= z;
  return p;
}

linalg::DensityMatrix zeroth_order_state(const SystemSpec& sys, const BathParams& bath,
                                         Convention conv, const SpectralDensity& sd) {
  const auto p = zeroth_order_populations(sys, bath, conv, sd);
  Matrix rho = Matrix::Zero(sys.dim(), sys.dim());
  for (std::size_t l = 0; l < p.size(); ++l) rho(l, l) = p[l];
  return linalg::DensityMatrix(sys.from_a_basis(rho));
}

CoherenceFactor f_exact(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                        std::size_t l, std::size_t l2, const quad::QuadratureSettings& q,
                        Convention conv) {
  check_pair(sys, l, l2);
  bath.validate();
  const double beta = bath.beta;
  const double w = gap_for(sys, bath, sd, l, l2, conv);
  const double da = sys.a_diff(l2, l);
  const double coup = bath.lambda * bath.lambda * da * da;
  exp_checked(beta * w, "f_exact");

  if (coup == 0.0) {
    if (w == 0.0) return {beta, 0.0};
    return {std::expm1(beta * w) / w, 0.0};
  }
  auto integrand = [&](double u) {
    return std::exp(u * w - coup * spectral::overlap_kernel(sd, beta, u, q));
  };
  std::vector<double> br;
  for (double f : {1e-4, 1e-3, 1e-2, 1e-1}) {
    br.push_back(beta * f);
    br.push_back(beta - beta * f);
  }
  const auto r = quad::integrate_finite(integrand, 0.0, beta, q, br);
  return {r.value, r.error_estimate};
}

double f_high_t(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                std::size_t l, std::size_t l2, Convention conv) {
  check_pair(sys, l, l2);
  bath.validate();
  if (bath.lambda == 0.0) throw UnsupportedOperation("f_high_t: singular at lambda = 0; use f_exact");
  const double beta = bath.beta;
  const double Q = spectral::reorganization_energy(sd);
  const double w = gap_for(sys, bath, sd, l, l2, conv);
  const double la = bath.lambda * std::abs(sys.a_diff(l2, l));
  const double r = std::sqrt(beta / Q);
  const double x1 = r / (2.0 * la) * (la * la * Q - w);
  const double x2 = r / (2.0 * la) * (la * la * Q + w);
  return r / la * (dawson(x1) + exp_checked(beta * w, "f_high_t") * dawson(x2));
}

double f_series(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                std::size_t l, std::size_t l2, Convention conv) {
  check_pair(sys, l, l2);
  bath.validate();
  const double beta = bath.beta;
  const double lq = bath.lambda * bath.lambda * spectral::reorganization_energy(sd);
  const double w = gap_for(sys, bath, sd, l, l2, conv);
  const double da = sys.a_diff(l2, l);
  if (!(lq * da * da > 0.0)) throw ValidationError("f_series: requires lambda^2 a^2 Q > 0");
  const double ebw = exp_checked(beta * w, "f_series");

  if (conv == Convention::Renormalized) {
    const double L = lq * da * da;
    return (1.0 + ebw) / L - w * std::expm1(beta * w) / (L * L);
  }
  const double al = sys.a_value(l), al2 = sys.a_value(l2);
  if (al == 0.0 || al2 == 0.0)
    throw UnsupportedOperation("f_series: natural-convention series needs nonzero a_l and a_l'");
  const double d = al - al2;
  const double bare = sys.gap(l, l2);
  return (1.0 / al - ebw / al2) / (2.0 * lq * d) +
         bare * (1.0 / (al * al) - ebw / (al2 * al2)) / (4.0 * lq * lq * d * d);
}

Diagnostics regime_diagnostics(const SystemSpec& sys, const BathParams& bath,
                               const SpectralDensity& sd, const RegimeThresholds& t) {
  bath.validate();
  Diagnostics d;
  const double lq = bath.lambda * bath.lambda * spectral::reorganization_energy(sd);
  double hmax = 0.0;
  for (std::size_t l = 0; l < sys.dim(); ++l) hmax = std::max(hmax, std::abs(sys.h(l)));
  d.lambda2q_beta = lq * bath.beta;
  d.cutoff_beta = sd.characteristic_frequency() * bath.beta;
  d.coupling_ratio = hmax > 0.0 ? lq / hmax : std::numeric_limits<double>::infinity();
  d.strong_coupling = d.coupling_ratio >= t.strong_coupling;
  d.series_valid = d.lambda2q_beta >= t.series;
  d.high_t_valid = d.cutoff_beta <= t.high_temperature;
  return d;
}

CorrectionResult steady_state(const SystemSpec& sys, const BathParams& bath,
                              const SpectralDensity& sd, CorrectionMethod method, Convention conv,
                              const quad::QuadratureSettings& q, const RegimeThresholds& thresholds) {
  const std::size_t n = sys.dim();
  const auto p = zeroth_order_populations(sys, bath, conv, sd);
  Diagnostics diag = regime_diagnostics(sys, bath, sd, thresholds);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  diag.f_errors = Eigen::MatrixXd::Zero(n, n);

  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t l2 = 0; l2 < n; ++l2) {
      if (l == l2) continue;
      switch (method) {
        case CorrectionMethod::ExactQuadrature: {
          const auto c = f_exact(sys, bath, sd, l, l2, q, conv);
          f(l, l2) = c.value;
          diag.f_errors(l, l2) = c.error_estimate;
          break;
        }
        case CorrectionMethod::HighTemperatureDawson:
          f(l, l2) = f_high_t(sys, bath, sd, l, l2, conv);
          break;
        case CorrectionMethod::UltrastrongSeries:
          f(l, l2) = f_series(sys, bath, sd, l, l2, conv);
          break;
      }
    }

  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    rho(l, l) = p[l];
    for (std::size_t l2 = l + 1; l2 < n; ++l2) {
      const cplx c = -0.5 * sys.h(l, l2) * (p[l] * f(l, l2) + p[l2] * f(l2, l));
      rho(l, l2) = c;
      rho(l2, l) = std::conj(c);
    }
  }
  linalg::DensityMatrix state(sys.from_a_basis(rho));
  diag.min_eigenvalue = state.min_eigenvalue();
  diag.psd_warning = diag.min_eigenvalue < -1e-3;
  return {p, f, std::move(state), method, conv, std::move(diag)};
}

}  // namespace mfgs
