// spinboson.hpp — two-level system H_S = (ε/2)σ_z + (Δ/2)σ_x coupled through A = σ_z
#pragma once

#include <cstddef>

#include "mfgs/linalg.hpp"
#include "mfgs/system.hpp"

namespace mfgs::spinboson {

struct SpinBosonParams {
  double epsilon;
  double delta;

  void validate() const;
};

// Positions of |−⟩ and |+⟩ in the (ascending) A eigenbasis of build_system.
inline constexpr std::size_t kMinus = 0;
inline constexpr std::size_t kPlus = 1;

struct SpinObservables {
  cplx c_ss;  // ⟨+|ρ|−⟩
  cplx c_eg;  // ⟨e|ρ|g⟩
  double p_plus, p_minus;
  double p_e, p_g;
};

SystemSpec build_system(const SpinBosonParams& p);

// Columns |e⟩, |g⟩ in the (|+⟩, |−⟩) basis, with the usual phase convention
// |e⟩ ∝ (ω_S+ε, Δ), |g⟩ ∝ (−Δ, ω_S+ε).
Matrix energy_eigenbasis(const SpinBosonParams& p);

SpinObservables observables(const linalg::DensityMatrix& state, const SpinBosonParams& p);

}  // namespace mfgs::spinboson
