// mfgs.hpp — perturbative mean force Gibbs state: zeroth order plus first-order coherences
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "mfgs/linalg.hpp"
#include "mfgs/quadrature.hpp"
#include "mfgs/spectral.hpp"
#include "mfgs/system.hpp"

namespace mfgs {

using spectral::BathParams;
using spectral::SpectralDensity;

enum class CorrectionMethod { ExactQuadrature, HighTemperatureDawson, UltrastrongSeries };

// Renormalized: H_S + λ²QA² is the bare system part, pseudo-energies h_l.
// Natural: no counter-term, pseudo-energies h_l − λ²a_l²Q.
enum class Convention { Renormalized, Natural };

std::string to_string(CorrectionMethod m);
std::string to_string(Convention c);

struct RegimeThresholds {
  double strong_coupling = 1.0;   // λ²Q / max|h_l|
  double series = 3.0;            // λ²Qβ
  double high_temperature = 0.5;  // ω_c β, upper bound
};

struct Diagnostics {
  double lambda2q_beta = 0.0;
  double cutoff_beta = 0.0;
  double coupling_ratio = 0.0;
  bool strong_coupling = false;
  bool series_valid = false;
  bool high_t_valid = false;
  double min_eigenvalue = 0.0;
  bool psd_warning = false;
  Eigen::MatrixXd f_errors;  // quadrature error estimates (ExactQuadrature only)
};

struct CoherenceFactor {
  double value;
  double error_estimate;
};

struct CorrectionResult {
  std::vector<double> populations;
  Eigen::MatrixXd f_values;  // f_{l,l'}, zero diagonal
  linalg::DensityMatrix state;
  CorrectionMethod method;
  Convention convention;
  Diagnostics diagnostics;
};

// e_l: h_l, or h_l − λ²a_l²Q under the Natural convention
RealVector pseudo_energies(const SystemSpec& sys, const BathParams& bath, Convention conv,
                           const SpectralDensity& sd);

std::vector<double> zeroth_order_populations(const SystemSpec& sys, const BathParams& bath,
                                             Convention conv, const SpectralDensity& sd);

linalg::DensityMatrix zeroth_order_state(const SystemSpec& sys, const BathParams& bath,
                                         Convention conv, const SpectralDensity& sd);

// ∫_0^β du e^{uω} e^{−λ²a²K(u)}
CoherenceFactor f_exact(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                        std::size_t l, std::size_t l2, const quad::QuadratureSettings& q = {},
                        Convention conv = Convention::Renormalized);

// K(u) ≈ u(1 − u/β)Q, integrated in closed form with the Dawson function
double f_high_t(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                std::size_t l, std::size_t l2, Convention conv = Convention::Renormalized);

// leading terms of the large-λ²Q expansion
double f_series(const SystemSpec& sys, const BathParams& bath, const SpectralDensity& sd,
                std::size_t l, std::size_t l2, Convention conv = Convention::Renormalized);

Diagnostics regime_diagnostics(const SystemSpec& sys, const BathParams& bath,
                               const SpectralDensity& sd, const RegimeThresholds& t = {});

CorrectionResult steady_state(const SystemSpec& sys, const BathParams& bath,
                              const SpectralDensity& sd, CorrectionMethod method,
                              Convention conv = Convention::Renormalized,
                              const quad::QuadratureSettings& q = {},
                              const RegimeThresholds& thresholds = {});

}  // namespace mfgs
