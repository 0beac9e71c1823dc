// spinboson.cpp
#include "mfgs/spinboson.hpp"

#include <cmath>

#include "mfgs/errors.hpp"

namespace mfgs::spinboson {

void SpinBosonParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(delta))
    throw ValidationError("SpinBosonParams: epsilon and delta must be finite");
  if (delta == 0.0) throw ValidationError("SpinBosonParams: delta must be nonzero ([H_S, A] = 0)");
}

SystemSpec build_system(const SpinBosonParams& p) {
  p.validate();
  const Matrix h = 0.5 * p.epsilon * linalg::sigma_z() + 0.5 * p.delta * linalg::sigma_x();
  return SystemSpec(HermitianMatrix(h), HermitianMatrix(linalg::sigma_z()));
}

Matrix energy_eigenbasis(const SpinBosonParams& p) {
  p.validate();
  const double ws = std::hypot(p.epsilon, p.delta);
  // ω_S + ε, computed without cancellation when ε < 0
  const double s = p.epsilon >= 0.0 ? ws + p.epsilon : p.delta * p.delta / (ws - p.epsilon);
  const double norm = std::sqrt(2.0 * ws * s);
  Matrix v(2, 2);
  v << s / norm, -p.delta / norm, p.delta / norm, s / norm;
  return v;
}

SpinObservables observables(const linalg::DensityMatrix& state, const SpinBosonParams& p) {
  if (state.dim() != 2) throw ValidationError("observables: spin-boson state must be 2x2");
  const Matrix v = energy_eigenbasis(p);
  const Matrix& r = state.matrix();
  const Matrix re = v.adjoint() * r * v;
  return {r(0, 1), re(0, 1), r(0, 0).real(), r(1, 1).real(), re(0, 0).real(), re(1, 1).real()};
}

}  // namespace mfgs::spinboson
