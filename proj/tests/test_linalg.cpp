// test_linalg.cpp — eigensolvers, matrix exponential, Kronecker product, partial trace
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mfgs/errors.hpp"
#include "mfgs/linalg.hpp"
#include "test_util.hpp"

using namespace mfgs;
using namespace mfgs::linalg;
using mfgs::test::max_abs;

namespace {

// e^{sM} by scaling and squaring of a truncated Taylor series
Matrix series_exp(const Matrix& m, double s) {
  Matrix a = m * s;
  int k = 0;
  while (max_abs(a) > 0.1) {
    a /= 2.0;
    ++k;
  }
  Matrix term = Matrix::Identity(m.rows(), m.cols()), sum = term;
  for (int n = 1; n <= 30; ++n) {
    term = term * a / static_cast<double>(n);
    sum += term;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST(HermitianMatrix, RejectsNonHermitian) {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_THROW(HermitianMatrix{m}, ValidationError);
  EXPECT_THROW(HermitianMatrix{Matrix(2, 3)}, ValidationError);
}

TEST(HermitianMatrix, SymmetrizesWithinTolerance) {
  Matrix m(2, 2);
  m << 1, cplx(0.5, 1e-13), 0.5, 2;
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(DensityMatrix, ChecksTrace) {
  EXPECT_THROW(DensityMatrix{Matrix(Matrix::Identity(2, 2))}, ValidationError);
  const DensityMatrix rho(Matrix(Matrix::Identity(2, 2) / 2.0));
  EXPECT_NEAR(rho.min_eigenvalue(), 0.5, 1e-15);
  EXPECT_TRUE(rho.is_psd());
}

TEST(Eigh, Identity) {
  const auto ed = eigh(HermitianMatrix::identity(2));
  EXPECT_DOUBLE_EQ(ed.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(ed.eigenvalues(1), 1.0);
}

TEST(Eigh, PauliZ) {
  const auto ed = eigh(HermitianMatrix(sigma_z()));
  EXPECT_DOUBLE_EQ(ed.eigenvalues(0), -1.0);
  EXPECT_DOUBLE_EQ(ed.eigenvalues(1), 1.0);
  EXPECT_NEAR(std::abs(ed.eigenvectors(1, 0)), 1.0, 1e-15);  // |−⟩ = (0, 1)
  EXPECT_NEAR(std::abs(ed.eigenvectors(0, 1)), 1.0, 1e-15);  // |+⟩ = (1, 0)
}

TEST(Eigh, SpinBosonHamiltonian) {
  const HermitianMatrix h(Matrix(0.5 * sigma_z() + 0.35 * sigma_x()));
  const auto ed = eigh(h);
  const double ws = std::sqrt(1.0 + 0.49);
  EXPECT_NEAR(ed.eigenvalues(0), -ws / 2, 1e-15);
  EXPECT_NEAR(ed.eigenvalues(1), ws / 2, 1e-15);
}

TEST(Eigh, ReconstructionAndOrthonormality) {
  std::mt19937 rng(7);
  for (int n : {3, 17, 64, 65, 150}) {
    const HermitianMatrix m = test::random_hermitian(rng, n);
    const auto ed = eigh(m);
    for (int i = 1; i < n; ++i) EXPECT_LE(ed.eigenvalues(i - 1), ed.eigenvalues(i));
    const Matrix& v = ed.eigenvectors;
    const Matrix rec = v * ed.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint();
    EXPECT_LE(max_abs(rec - m.matrix()), 1e-10 * max_abs(m.matrix())) << "n=" << n;
    EXPECT_LE(max_abs(v.adjoint() * v - Matrix::Identity(n, n)), 1e-10) << "n=" << n;
  }
}

TEST(Eigh, IdempotentUnderReconstruction) {
  std::mt19937 rng(8);
  const HermitianMatrix m = test::random_hermitian(rng, 80);
  const auto ed = eigh(m);
  const Matrix rec = ed.eigenvectors * ed.eigenvalues.cast<cplx>().asDiagonal() * ed.eigenvectors.adjoint();
  const auto ed2 = eigh(HermitianMatrix(rec, 1e-10));
  EXPECT_LE((ed2.eigenvalues - ed.eigenvalues).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Eigh, RealSymmetricLargePath) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> d(-1, 1);
  Eigen::MatrixXd a(120, 120);
  for (int i = 0; i < 120; ++i)
    for (int j = 0; j < 120; ++j) a(i, j) = d(rng);
  const HermitianMatrix m(Matrix((a + a.transpose()).cast<cplx>()));
  const auto ed = eigh(m);
  const Matrix rec = ed.eigenvectors * ed.eigenvalues.cast<cplx>().asDiagonal() * ed.eigenvectors.adjoint();
  EXPECT_LE(max_abs(rec - m.matrix()), 1e-10 * max_abs(m.matrix()));
}

TEST(EighWindow, MatchesFullSpectrumBelowWindow) {
  std::mt19937 rng(10);
  for (bool real : {true, false}) {
    Matrix m = test::random_hermitian(rng, 200).matrix();
    if (real) m = m.real().cast<cplx>();
    const HermitianMatrix h(m);
    const auto full = eigh(h);
    const double width = 5.0;
    const auto win = eigh_window(h, width);
    const Eigen::Index k = win.eigenvalues.size();
    ASSERT_GT(k, 0);
    Eigen::Index expected = 0;
    for (Eigen::Index i = 0; i < full.eigenvalues.size(); ++i)
      expected += full.eigenvalues(i) <= full.eigenvalues(0) + width;
    EXPECT_GE(k, expected);
    EXPECT_LE((win.eigenvalues - full.eigenvalues.head(k)).cwiseAbs().maxCoeff(), 1e-10);
    // projector onto the lowest `expected` states is gauge invariant
    const Matrix pw = win.eigenvectors.leftCols(expected) * win.eigenvectors.leftCols(expected).adjoint();
    const Matrix pf = full.eigenvectors.leftCols(expected) * full.eigenvectors.leftCols(expected).adjoint();
    EXPECT_LE(max_abs(pw - pf), 1e-8);
  }
}

TEST(MatrixExp, ZerosGiveIdentity) {
  for (double s : {-3.0, 0.0, 2.5})
    EXPECT_EQ(matrix_exp_hermitian(HermitianMatrix::zeros(2), s).matrix(), Matrix(Matrix::Identity(2, 2)));
}

TEST(MatrixExp, PauliZ) {
  const double beta = 1.3;
  const auto e = matrix_exp_hermitian(HermitianMatrix(sigma_z()), -beta);
  EXPECT_NEAR(e(0, 0).real(), std::exp(-beta), 1e-15);
  EXPECT_NEAR(e(1, 1).real(), std::exp(beta), 1e-14);
  EXPECT_EQ(e(0, 1), cplx(0.0));
}

TEST(MatrixExp, TraceEqualsSumOfExponentials) {
  std::mt19937 rng(11);
  for (double s : {-2.0, -0.3, 0.7}) {
    const HermitianMatrix m = test::random_hermitian(rng, 6);
    const auto ed = eigh(m);
    const double expected = (s * ed.eigenvalues.array()).exp().sum();
    EXPECT_NEAR(matrix_exp_hermitian(m, s).matrix().trace().real(), expected, 1e-10 * expected);
  }
}

TEST(MatrixExp, SingleModeSpinBosonMatchesSeries) {
  // H = (1/2)σz + 0.35σx + ω n + λ g σz (a + a†), cutoff 7
  const int c = 7;
  Matrix hb = Matrix::Zero(c + 1, c + 1), b = Matrix::Zero(c + 1, c + 1);
  for (int n = 0; n <= c; ++n) {
    hb(n, n) = 1.0 * n;
    if (n < c) b(n, n + 1) = b(n + 1, n) = std::sqrt(n + 1.0);
  }
  const Matrix h = kron(Matrix(0.5 * sigma_z() + 0.35 * sigma_x()), Matrix(Matrix::Identity(c + 1, c + 1))) +
                   kron(Matrix(Matrix::Identity(2, 2)), hb) + 0.6 * kron(sigma_z(), b);
  const auto e = matrix_exp_hermitian(HermitianMatrix(h), -1.0);
  const Matrix ref = series_exp(h, -1.0);
  EXPECT_LE(max_abs(e.matrix() - ref), 1e-8 * max_abs(ref));
}

TEST(MatrixExp, OverflowCarriesExponent) {
  try {
    matrix_exp_hermitian(HermitianMatrix(Matrix(1000.0 * sigma_z())), 1.0);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_NEAR(e.exponent(), 1000.0, 1e-9);
  }
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(HermitianMatrix::identity(2), HermitianMatrix::identity(3)).matrix(), Matrix(Matrix::Identity(6, 6)));
  RealVector d(3);
  d << 0, 1, 2;
  const auto k = kron(HermitianMatrix(sigma_z()), HermitianMatrix::diagonal(d));
  RealVector expect(6);
  expect << 0, 1, 2, 0, -1, -2;
  EXPECT_EQ(k.matrix(), Matrix(expect.cast<cplx>().asDiagonal()));
}

TEST(Kron, SigmaXIdentityLayout) {
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 2) = expect(1, 3) = expect(2, 0) = expect(3, 1) = 1.0;
  EXPECT_EQ(kron(sigma_x(), Matrix(Matrix::Identity(2, 2))), expect);
}

TEST(Kron, DimensionCap) {
  EXPECT_THROW(kron(HermitianMatrix::identity(8), HermitianMatrix::identity(8), 32), ValidationError);
}

TEST(PartialTrace, ProductState) {
  std::mt19937 rng(12);
  const Matrix ra = test::random_state(rng, 3), rb = 2.5 * test::random_state(rng, 2);
  const std::vector<std::size_t> dims{3, 2};
  EXPECT_LE(max_abs(partial_trace(kron(ra, rb), dims, 0) - ra * rb.trace()), 1e-14);
  EXPECT_LE(max_abs(partial_trace(kron(ra, rb), dims, 1) - rb * ra.trace()), 1e-14);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const std::vector<std::size_t> dims{2, 2};
  const Matrix r = partial_trace(psi * psi.adjoint(), dims, 0);
  EXPECT_LE(max_abs(r - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, RecoversFactorsOfRandomKron) {
  std::mt19937 rng(13);
  for (int da = 1; da <= 3; ++da)
    for (int db = 1; db <= 6 / da; ++db) {
      const Matrix a = test::random_hermitian(rng, da).matrix(), b = test::random_hermitian(rng, db).matrix();
      const std::vector<std::size_t> dims{std::size_t(da), std::size_t(db)};
      EXPECT_LE(max_abs(partial_trace(kron(a, b), dims, 0) - a * b.trace()), 1e-13);
      EXPECT_LE(max_abs(partial_trace(kron(a, b), dims, 1) - b * a.trace()), 1e-13);
    }
}

TEST(PartialTrace, MatchesIndexLoopAndPreservesTrace) {
  std::mt19937 rng(14);
  const std::vector<std::size_t> dims{2, 3, 4};
  const Matrix m = test::random_matrix(rng, 24);
  for (std::size_t keep = 0; keep < 3; ++keep) {
    const Matrix r = partial_trace(m, dims, keep);
    EXPECT_NEAR(std::abs(r.trace() - m.trace()), 0.0, 1e-12);
    Matrix ref = Matrix::Zero(dims[keep], dims[keep]);
    for (std::size_t i0 = 0; i0 < 2; ++i0)
      for (std::size_t i1 = 0; i1 < 3; ++i1)
        for (std::size_t i2 = 0; i2 < 4; ++i2)
          for (std::size_t j = 0; j < dims[keep]; ++j) {
            std::size_t ii[3] = {i0, i1, i2}, jj[3] = {i0, i1, i2};
            const std::size_t i = ii[keep];
            jj[keep] = j;
            ref(i, j) += m(ii[0] * 12 + ii[1] * 4 + ii[2], jj[0] * 12 + jj[1] * 4 + jj[2]);
          }
    EXPECT_LE(max_abs(r - ref), 1e-13) << "keep=" << keep;
  }
}

TEST(PartialTrace, InconsistentDims) {
  const std::vector<std::size_t> dims{2, 2};
  EXPECT_THROW(partial_trace(Matrix::Identity(6, 6), dims, 0), ValidationError);
  EXPECT_THROW(partial_trace(Matrix::Identity(4, 4), dims, 2), ValidationError);
}

TEST(TraceDistance, Basics) {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
}
