// linalg.hpp — Hermitian matrices, density matrices, eigensolvers, Kronecker product, partial trace
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mfgs::linalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 20;

// Dense Hermitian matrix. Input is validated against the tolerance and then
// stored exactly Hermitian, (M + M†)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m, double tol = kHermitianTol);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix diagonal(const RealVector& d);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  // True when every entry has exactly zero imaginary part.
  bool is_real() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

// Hermitian, unit-trace matrix. Positivity is measured, not enforced.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m, double herm_tol = kHermitianTol,
                         double trace_tol = kTraceTol);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double min_eigenvalue() const;
  bool is_psd(double tol = 1e-9) const { return min_eigenvalue() >= -tol; }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns
};

EigenDecomposition eigh(const HermitianMatrix& m);

// Eigenpairs with eigenvalue ≤ λ_min + width only. Used for thermal sums
// where states above the window carry weight below e^{-width·β}.
EigenDecomposition eigh_window(const HermitianMatrix& m, double width);

// e^{scale·m} through the spectral decomposition.
HermitianMatrix matrix_exp_hermitian(const HermitianMatrix& m, double scale);

Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_dim = kDefaultMaxDim);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b,
                     std::size_t max_dim = kDefaultMaxDim);

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims, std::size_t keep);

// ‖a − b‖_1 / 2 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

// ---- Pauli matrices ----
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

}  // namespace mfgs::linalg
