// system.cpp — SystemSpec validation and A-basis quantities
#include "mfgs/system.hpp"

#include <cmath>

#include "mfgs/errors.hpp"

namespace mfgs {

SystemSpec::SystemSpec(HermitianMatrix h_s, HermitianMatrix a)
    : h_s_(std::move(h_s)), a_(std::move(a)) {
  if (h_s_.dim() != a_.dim()) throw ValidationError("SystemSpec: H_S and A dimensions differ");
  if (h_s_.dim() < 2) throw ValidationError("SystemSpec: dimension must be >= 2");

  const Matrix comm = h_s_.matrix() * a_.matrix() - a_.matrix() * h_s_.matrix();
  if (comm.cwiseAbs().maxCoeff() <= 1e-12) throw ValidationError("SystemSpec: [H_S, A] must not vanish");

  auto ed = linalg::eigh(a_);
  a_vals_ = ed.eigenvalues;
  const double range = a_vals_(a_vals_.size() - 1) - a_vals_(0);
  for (Eigen::Index i = 1; i < a_vals_.size(); ++i)
    if (!(a_vals_(i) - a_vals_(i - 1) > 1e-9 * range))
      throw ValidationError("SystemSpec: eigenvalues of A must be non-degenerate");

  a_vecs_ = std::move(ed.eigenvectors);
  for (Eigen::Index c = 0; c < a_vecs_.cols(); ++c) {
    Eigen::Index imax = 0;
    a_vecs_.col(c).cwiseAbs().maxCoeff(&imax);
    const cplx z = a_vecs_(imax, c);
    a_vecs_.col(c) *= std::conj(z) / std::abs(z);
    a_vecs_(imax, c) = std::abs(a_vecs_(imax, c));
  }
  h_ = a_vecs_.adjoint() * h_s_.matrix() * a_vecs_;
  h_ = 0.5 * (h_ + h_.adjoint()).eval();
}

Matrix SystemSpec::to_a_basis(const Matrix& lab) const { return a_vecs_.adjoint() * lab * a_vecs_; }

Matrix SystemSpec::from_a_basis(const Matrix& m) const { return a_vecs_ * m * a_vecs_.adjoint(); }

}  // namespace mfgs
