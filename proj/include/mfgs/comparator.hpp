// comparator.hpp — steady state of the strong-decoherence master equation
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfgs/linalg.hpp"
#include "mfgs/mfgs.hpp"
#include "mfgs/quadrature.hpp"
#include "mfgs/spectral.hpp"
#include "mfgs/system.hpp"

namespace mfgs::comparator {

struct MEResult {
  Matrix coherences;                // ρ_{l,l'} in the A eigenbasis, zero diagonal
  std::vector<double> populations;  // renormalized Boltzmann weights
  Eigen::MatrixXd truncation_tau;   // τ at which each pair's integral was cut
  Eigen::MatrixXd error_estimates;
  double hermiticity_defect = 0.0;  // max |ρ_{l,l'} − conj ρ_{l',l}|

  // diag(p) + coherences, rotated back to the lab basis
  linalg::DensityMatrix state(const SystemSpec& sys) const;
};

// ρ_{l,l'} = h_{l,l'}[i p_l ∫ e^{−L(G*(τ) − iτQ)} e^{−iω̄τ} dτ − i p_l' ∫ e^{−L(G(τ) + iτQ)} e^{−iω̄τ} dτ],
// L = λ²(a_l' − a_l)², ω̄ = h̃_l − h̃_l'.
MEResult me_steady_state(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                         const quad::QuadratureSettings& q = {});

}  // namespace mfgs::comparator
