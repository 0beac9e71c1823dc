// oracle.hpp — exact diagonalization of system + Fock-truncated discrete bath
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mfgs/linalg.hpp"
#include "mfgs/mfgs.hpp"
#include "mfgs/spectral.hpp"
#include "mfgs/system.hpp"

namespace mfgs::oracle {

using spectral::Mode;

inline constexpr int kDefaultFockCutoff = 25;
inline constexpr std::size_t kDefaultMaxDim = 8192;

// Thrown when a Hilbert space would exceed the dense-solver cap.
class DimensionCapError : public ValidationError {
 public:
  DimensionCapError(const std::string& what, std::size_t required)
      : ValidationError(what), required_(required) {}
  std::size_t required_dim() const noexcept { return required_; }

 private:
  std::size_t required_;
};

struct BathDiscretization {
  std::vector<Mode> modes;
  std::vector<int> fock_cutoffs;  // highest occupation kept, per mode
  bool auto_raise = true;         // raise cutoffs from the displaced-occupancy estimate
  std::string source;

  static BathDiscretization explicit_modes(std::vector<Mode> modes, int fock_cutoff = kDefaultFockCutoff);
  void validate() const;
  std::size_t bath_dim() const;  // Π (cutoff_k + 1)
  double reorganization() const;  // Σ g²/ω
  SpectralDensity density() const;
};

// Midpoint rule on [0, ω_max]: ω_k = (k − ½)ω_max/n, g_k² = J(ω_k)ω_max/n.
BathDiscretization discretize(const SpectralDensity& sd, int n, double omega_max,
                              int fock_cutoff = kDefaultFockCutoff);

HermitianMatrix build_total_hamiltonian(const SystemSpec& sys, const BathDiscretization& bd,
                                        double lambda, Convention conv,
                                        std::size_t max_dim = kDefaultMaxDim);

struct OracleSettings {
  std::size_t max_dim = kDefaultMaxDim;
  double boltzmann_window = 40.0;  // keep eigenpairs with β(E − E0) ≤ window
  bool convergence_table = true;
  double convergence_tol = 1e-6;
};

struct ConvergenceRow {
  std::vector<int> fock_cutoffs;
  double distance_to_previous;  // trace distance to the next-lower cutoff; NaN for the lowest
};

struct OracleResult {
  linalg::DensityMatrix state;
  double log_z_sb;
  double log_z_b;
  std::vector<int> fock_cutoffs;
  std::vector<ConvergenceRow> convergence;
  bool converged;

  double z_sb() const;
  double z_b() const;
};

struct ReducedThermal {
  Matrix rho;  // Tr_B e^{−βH} / Z
  double log_z;
};

// Reduced Gibbs state of the leading factor (dimension dim_s) of H.
ReducedThermal reduced_thermal_state(const HermitianMatrix& h, std::size_t dim_s, double beta,
                                     double window = 40.0);

OracleResult exact_mean_force_state(const SystemSpec& sys, const BathDiscretization& bd,
                                    const BathParams& bath, Convention conv,
                                    const OracleSettings& settings = {});

struct TraceIdentityCheck {
  double lhs;
  double rhs;
  double relative_error;
  bool truncation_flag;  // lhs moved by more than 1e-8 relative at cutoff + 10
};

using KernelFunction = std::function<double(const SpectralDensity&, double beta, double u)>;

// Tr[e^{−(β−u)H_{B,l}} e^{−uH_{B,l'}}] against Z_B e^{−λ²(a_l' − a_l)²K(u)} for one mode.
TraceIdentityCheck verify_trace_identity(const BathDiscretization& bd, double a_l, double a_l2,
                                         double lambda, double beta, double u,
                                         const KernelFunction& kernel = {});

}  // namespace mfgs::oracle
