// linalg.cpp — Eigen for small problems, LAPACK (via LAPACKE) for large ones
#include "mfgs/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mfgs/errors.hpp"

namespace mfgs::linalg {

namespace {

constexpr std::size_t kSmallDim = 64;
constexpr double kMaxExponent = 709.0;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

EigenDecomposition eigen_solver(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("eigh: Eigen solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Some optimized BLAS kernels return corrupted eigenvectors; spot-check a few
// columns for residual and orthogonality before trusting LAPACK output.
bool spot_check(const Matrix& m, const EigenDecomposition& ed) {
  const Eigen::Index n = m.rows();
  const Eigen::Index k = ed.eigenvectors.cols();
  if (k == 0) return true;
  const double scale = std::max(max_abs(m), 1.0) * static_cast<double>(n);
  std::vector<Eigen::Index> cols{0, k - 1, k / 2, k / 3, (2 * k) / 3, k / 7};
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  for (Eigen::Index c : cols) {
    const Eigen::VectorXcd v = ed.eigenvectors.col(c);
    const double res = (m * v - ed.eigenvalues(c) * v).cwiseAbs().maxCoeff();
    if (!(res <= 1e-9 * scale)) return false;
    for (Eigen::Index d : cols) {
      const cplx ip = ed.eigenvectors.col(d).dot(v);
      const double target = (c == d) ? 1.0 : 0.0;
      if (!(std::abs(ip - target) <= 1e-9)) return false;
    }
  }
  for (Eigen::Index i = 1; i < k; ++i)
    if (ed.eigenvalues(i) < ed.eigenvalues(i - 1)) return false;
  return true;
}

EigenDecomposition lapack_full(const HermitianMatrix& h) {
  const lapack_int n = static_cast<lapack_int>(h.dim());
  EigenDecomposition ed;
  ed.eigenvalues.resize(n);
  if (h.is_real()) {
    Eigen::MatrixXd a = h.matrix().real();
    if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, ed.eigenvalues.data()) != 0)
      throw NumericalError("eigh: dsyevd failed");
    ed.eigenvectors = a.cast<cplx>();
  } else {
    Matrix a = h.matrix();
    auto* p = reinterpret_cast<lapack_complex_double*>(a.data());
    if (LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, p, n, ed.eigenvalues.data()) != 0)
      throw NumericalError("eigh: zheevd failed");
    ed.eigenvectors = std::move(a);
  }
  return ed;
}

// Tridiagonalize once, get every eigenvalue from the tridiagonal form, then
// compute eigenvectors only inside the window and back-transform them.
EigenDecomposition lapack_window(const HermitianMatrix& h, double width) {
  const lapack_int n = static_cast<lapack_int>(h.dim());
  RealVector d(n), e(std::max<lapack_int>(n, 1));
  EigenDecomposition ed;

  auto select = [&](RealVector& dd, RealVector& ee, lapack_int& count, RealVector& w,
                    Eigen::MatrixXd& z) {
    RealVector all_d = dd, all_e = ee;
    if (LAPACKE_dsterf(n, all_d.data(), all_e.data()) != 0)
      throw NumericalError("eigh_window: dsterf failed");
    const double lo = all_d.minCoeff();
    const double vu = lo + width;
    const double vl = lo - 1.0 - 1e-8 * std::abs(lo);
    lapack_int k = 0;
    for (lapack_int i = 0; i < n; ++i)
      if (all_d(i) <= vu) ++k;
    const lapack_int nzc = std::min<lapack_int>(n, k + 16);
    w.resize(n);
    z.resize(n, nzc);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(nzc));
    lapack_logical tryrac = 1;
    if (LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'V', n, dd.data(), ee.data(), vl, vu, 0, 0,
                       &count, w.data(), z.data(), n, nzc, isuppz.data(), &tryrac) != 0)
      throw NumericalError("eigh_window: dstemr failed");
  };

  lapack_int count = 0;
  RealVector w;
  Eigen::MatrixXd z;
  if (h.is_real()) {
    Eigen::MatrixXd a = h.matrix().real();
    RealVector tau(std::max<lapack_int>(n - 1, 1));
    if (LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'U', n, a.data(), n, d.data(), e.data(), tau.data()) != 0)
      throw NumericalError("eigh_window: dsytrd failed");
    select(d, e, count, w, z);
    Eigen::MatrixXd c = z.leftCols(count);
    if (count > 0 && LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'U', 'N', n, count, a.data(), n,
                                    tau.data(), c.data(), n) != 0)
      throw NumericalError("eigh_window: dormtr failed");
    ed.eigenvectors = c.cast<cplx>();
  } else {
    Matrix a = h.matrix();
    Eigen::VectorXcd tau(std::max<lapack_int>(n - 1, 1));
    auto* pa = reinterpret_cast<lapack_complex_double*>(a.data());
    auto* pt = reinterpret_cast<lapack_complex_double*>(tau.data());
    if (LAPACKE_zhetrd(LAPACK_COL_MAJOR, 'U', n, pa, n, d.data(), e.data(), pt) != 0)
      throw NumericalError("eigh_window: zhetrd failed");
    select(d, e, count, w, z);
    Matrix c = z.leftCols(count).cast<cplx>();
    if (count > 0 &&
        LAPACKE_zunmtr(LAPACK_COL_MAJOR, 'L', 'U', 'N', n, count, pa, n, pt,
                       reinterpret_cast<lapack_complex_double*>(c.data()), n) != 0)
      throw NumericalError("eigh_window: zunmtr failed");
    ed.eigenvectors = std::move(c);
  }
  ed.eigenvalues = w.head(count);
  return ed;
}

EigenDecomposition truncate_window(EigenDecomposition ed, double width) {
  const double vu = ed.eigenvalues(0) + width;
  Eigen::Index k = 0;
  while (k < ed.eigenvalues.size() && ed.eigenvalues(k) <= vu) ++k;
  return {ed.eigenvalues.head(k), ed.eigenvectors.leftCols(k)};
}

}  // namespace

// ---- HermitianMatrix ----

HermitianMatrix::HermitianMatrix(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw ValidationError("HermitianMatrix: must be square with dim >= 1");
  if (!m.allFinite()) throw ValidationError("HermitianMatrix: non-finite entry");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw ValidationError("HermitianMatrix: not Hermitian (deviation " + std::to_string(dev) + ")");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  if (n == 0) throw ValidationError("HermitianMatrix: dim must be >= 1");
  return HermitianMatrix(Matrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::zeros(std::size_t n) {
  if (n == 0) throw ValidationError("HermitianMatrix: dim must be >= 1");
  return HermitianMatrix(Matrix::Zero(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  if (d.size() == 0) throw ValidationError("HermitianMatrix: dim must be >= 1");
  return HermitianMatrix(Matrix(d.cast<cplx>().asDiagonal()), Trusted{});
}

bool HermitianMatrix::is_real() const { return (m_.imag().array() == 0.0).all(); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw ValidationError("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(Matrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw ValidationError("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(Matrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(Matrix(m_ * s), Trusted{});
}

// ---- DensityMatrix ----

DensityMatrix::DensityMatrix(const Matrix& m, double herm_tol, double trace_tol) {
  const HermitianMatrix h(m, herm_tol);
  const cplx tr = h.matrix().trace();
  if (std::abs(tr - 1.0) > trace_tol)
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  m_ = h.matrix();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// ---- eigensolvers ----

EigenDecomposition eigh(const HermitianMatrix& m) {
  if (m.dim() <= kSmallDim) return eigen_solver(m.matrix());
  EigenDecomposition ed = lapack_full(m);
  if (!spot_check(m.matrix(), ed)) return eigen_solver(m.matrix());
  return ed;
}

EigenDecomposition eigh_window(const HermitianMatrix& m, double width) {
  if (!(width >= 0.0)) throw ValidationError("eigh_window: width must be >= 0");
  if (m.dim() <= kSmallDim) return truncate_window(eigen_solver(m.matrix()), width);
  EigenDecomposition ed = lapack_window(m, width);
  if (ed.eigenvalues.size() == 0 || !spot_check(m.matrix(), ed))
    return truncate_window(eigen_solver(m.matrix()), width);
  return ed;
}

HermitianMatrix matrix_exp_hermitian(const HermitianMatrix& m, double scale) {
  const EigenDecomposition ed = eigh(m);
  RealVector ex = scale * ed.eigenvalues;
  const double top = ex.maxCoeff();
  if (top > kMaxExponent)
    throw OverflowError("matrix_exp_hermitian: exponent overflows; shift the spectrum first", top);
  ex = ex.array().exp();
  const Matrix r = ed.eigenvectors * ex.cast<cplx>().asDiagonal() * ed.eigenvectors.adjoint();
  return HermitianMatrix(r, 1e-8 * std::max(1.0, r.cwiseAbs().maxCoeff()));
}

// ---- tensor products ----

Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_dim) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dim || cols > max_dim)
    throw ValidationError("kron: dimension " + std::to_string(std::max(rows, cols)) +
                          " exceeds cap " + std::to_string(max_dim));
  Matrix r(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b, std::size_t max_dim) {
  return HermitianMatrix(kron(a.matrix(), b.matrix(), max_dim));
}

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims, std::size_t keep) {
  if (dims.empty() || keep >= dims.size())
    throw ValidationError("partial_trace: keep index out of range");
  if (m.rows() != m.cols()) throw ValidationError("partial_trace: matrix must be square");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != static_cast<std::size_t>(m.rows()) ||
      std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; }))
    throw ValidationError("partial_trace: product of dims does not match matrix dim");

  // index = (outer * dk + k) * inner + in
  const std::size_t dk = dims[keep];
  const std::size_t outer = std::accumulate(dims.begin(), dims.begin() + keep, std::size_t{1},
                                            std::multiplies<>());
  const std::size_t inner = total / (outer * dk);
  Matrix r = Matrix::Zero(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t in = 0; in < inner; ++in)
          s += m((o * dk + i) * inner + in, (o * dk + j) * inner + in);
      r(i, j) = s;
    }
  return r;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ---- Pauli matrices ----

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace mfgs::linalg
