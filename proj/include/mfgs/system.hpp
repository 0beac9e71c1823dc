// system.hpp — system Hamiltonian and coupling observable, expressed in the A eigenbasis
#pragma once

#include <cstddef>

#include "mfgs/linalg.hpp"

namespace mfgs {

using linalg::cplx;
using linalg::HermitianMatrix;
using linalg::Matrix;
using linalg::RealVector;

class SystemSpec {
 public:
  SystemSpec(HermitianMatrix h_s, HermitianMatrix a);

  std::size_t dim() const noexcept { return h_s_.dim(); }
  const HermitianMatrix& h_s() const noexcept { return h_s_; }
  const HermitianMatrix& a() const noexcept { return a_; }

  // a_l, ascending
  const RealVector& a_eigenvalues() const noexcept { return a_vals_; }
  // columns |a_l⟩; largest component of each column real positive
  const Matrix& a_eigenvectors() const noexcept { return a_vecs_; }
  // h_{l,l'} = ⟨a_l|H_S|a_l'⟩
  const Matrix& h_elements() const noexcept { return h_; }

  double h(std::size_t l) const { return h_(l, l).real(); }
  cplx h(std::size_t l, std::size_t l2) const { return h_(l, l2); }
  double a_value(std::size_t l) const { return a_vals_(l); }
  // ω_{l,l'} = h_l − h_l'
  double gap(std::size_t l, std::size_t l2) const { return h(l) - h(l2); }
  // a_{l',l} = a_l' − a_l
  double a_diff(std::size_t l2, std::size_t l) const { return a_vals_(l2) - a_vals_(l); }

  Matrix to_a_basis(const Matrix& lab) const;
  Matrix from_a_basis(const Matrix& a_basis) const;

 private:
  HermitianMatrix h_s_;
  HermitianMatrix a_;
  RealVector a_vals_;
  Matrix a_vecs_;
  Matrix h_;
};

}  // namespace mfgs
