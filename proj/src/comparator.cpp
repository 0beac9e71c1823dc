// comparator.cpp — τ-integrals of the master-equation coherences
#include "mfgs/comparator.hpp"

#include <algorithm>
#include <cmath>

#include "mfgs/errors.hpp"

namespace mfgs::comparator {

namespace {

using Vec4 = Eigen::Matrix<cplx, 4, 1>;
constexpr cplx kI(0.0, 1.0);

}  // namespace

linalg::DensityMatrix MEResult::state(const SystemSpec& sys) const {
  Matrix rho = coherences;
  for (std::size_t l = 0; l < populations.size(); ++l) rho(l, l) = populations[l];
  return linalg::DensityMatrix(sys.from_a_basis(rho), 1e-8);
}

MEResult me_steady_state(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                         const quad::QuadratureSettings& q) {
  bath.validate();
  q.validate();
  if (!(bath.lambda > 0.0)) throw ValidationError("me_steady_state: requires lambda > 0");
  const std::size_t n = sys.dim();
  const double beta = bath.beta;
  const double Q = spectral::reorganization_energy(sd);
  const RealVector e = pseudo_energies(sys, bath, Convention::Natural, sd);

  MEResult r;
  r.populations = zeroth_order_populations(sys, bath, Convention::Natural, sd);
  r.coherences = Matrix::Zero(n, n);
  r.truncation_tau = Eigen::MatrixXd::Zero(n, n);
  r.error_estimates = Eigen::MatrixXd::Zero(n, n);
  const auto& p = r.populations;

  auto g_of = [&](double tau) { return spectral::g_double_integral(sd, beta, tau, q); };
  const double tau0 = std::min(1.0 / sd.characteristic_frequency(), beta) / 8.0;

  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t l2 = l + 1; l2 < n; ++l2) {
      if (sys.h(l, l2) == 0.0) continue;
      const double da = sys.a_diff(l2, l);
      const double L = bath.lambda * bath.lambda * da * da;
      const double wbar = e(l) - e(l2);

      // cut where the bound e^{−L Re G(τ)} falls below e^{−tail}
      double cut = tau0;
      double decay = L * g_of(cut).real();
      for (int k = 0; decay < q.tail_cutoff_exponent; ++k) {
        if (k > 80 || !std::isfinite(decay)) throw NumericalError("me_steady_state: Re G(τ) is not growing");
        cut *= 2.0;
        decay = L * g_of(cut).real();
      }

      auto integrand = [&](double tau) -> Vec4 {
        const cplx g = g_of(tau);
        const cplx rot = kI * wbar * tau;
        const cplx plus = -L * (std::conj(g) - kI * tau * Q);
        const cplx minus = -L * (g + kI * tau * Q);
        Vec4 v;
        v << std::exp(plus - rot), std::exp(minus - rot), std::exp(plus + rot), std::exp(minus + rot);
        return v;
      };
      std::vector<double> br;
      for (int k = 1; k <= 12; ++k) br.push_back(std::ldexp(cut, -k));
      const auto res = quad::integrate_finite(integrand, 0.0, cut, q, br);
      const Vec4& I = res.value;
      const double tail = std::exp(-decay) * cut;

      r.coherences(l, l2) = sys.h(l, l2) * (kI * p[l] * I(0) - kI * p[l2] * I(1));
      r.coherences(l2, l) = sys.h(l2, l) * (kI * p[l2] * I(2) - kI * p[l] * I(3));
      r.truncation_tau(l, l2) = r.truncation_tau(l2, l) = cut;
      r.error_estimates(l, l2) = r.error_estimates(l2, l) = std::abs(sys.h(l, l2)) * (res.error_estimate + tail);
      r.hermiticity_defect =
          std::max(r.hermiticity_defect, std::abs(r.coherences(l, l2) - std::conj(r.coherences(l2, l))));
    }
  return r;
}

}  // namespace mfgs::comparator
