// test_util.hpp — shared helpers for the unit suites
#pragma once

#include <Eigen/Dense>
#include <random>

#include "mfgs/linalg.hpp"
#include "mfgs/system.hpp"

namespace mfgs::test {

inline linalg::Matrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  linalg::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

inline linalg::HermitianMatrix random_hermitian(std::mt19937& rng, int n) {
  const linalg::Matrix m = random_matrix(rng, n);
  return linalg::HermitianMatrix(linalg::Matrix((m + m.adjoint()) / 2.0));
}

// Random density matrix M M† / Tr.
inline linalg::Matrix random_state(std::mt19937& rng, int n) {
  const linalg::Matrix m = random_matrix(rng, n);
  linalg::Matrix r = m * m.adjoint();
  return r / r.trace();
}

inline double max_abs(const linalg::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace mfgs::test
