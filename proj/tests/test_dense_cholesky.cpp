#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "saddle/cholesky.hpp"
#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

using namespace saddle;

namespace {

// G^T G + I of order n, returned dense.
DenseMatrix random_spd(std::size_t n, std::mt19937_64& rng) {
  DenseMatrix g = oracle::random_dense(n, n, rng);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a(i, j) += g(k, i) * g(k, j);
      if (i == j) a(i, j) += 1.0;
    }
  return a;
}

double relative_residual(const CsrMatrix& m, const std::vector<double>& x,
                         const std::vector<double>& b) {
  std::vector<double> r = matvec(m, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return norm2(r) / norm2(b);
}

}  // namespace

TEST(Cholesky, Diagonal) {
  std::vector<double> d{4, 9};
  CholeskyFactor f(CsrMatrix::diagonal(d));
  EXPECT_EQ(f.lower(), DenseMatrix(2, 2, {2, 0, 0, 3}));
}

TEST(Cholesky, TwoByTwoHand) {
  CholeskyFactor f(CsrMatrix::from_dense(DenseMatrix(2, 2, {4, 2, 2, 5})));
  EXPECT_EQ(f.lower(), DenseMatrix(2, 2, {2, 0, 1, 2}));
}

TEST(Cholesky, RandomReconstruction) {
  std::mt19937_64 rng(50);
  DenseMatrix a = random_spd(50, rng);
  CholeskyFactor f(CsrMatrix::from_dense(a));
  DenseMatrix l = f.lower();
  DenseMatrix r = l * transpose(l);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) r(i, j) -= a(i, j);
  EXPECT_LE(frobenius_norm(r) / frobenius_norm(a), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(l, oracle::cholesky_lower(a)), 1e-10);
}

TEST(Cholesky, SolveMatchesOracle) {
  std::mt19937_64 rng(51);
  DenseMatrix a = random_spd(30, rng);
  auto b = oracle::random_vector(30, rng);
  CsrMatrix m = CsrMatrix::from_dense(a);
  auto x = CholeskyFactor(m).solve(b);
  EXPECT_LE(relative_residual(m, x, b), 1e-10);
  EXPECT_LE(oracle::rel_diff(x, oracle::cholesky_solve(a, b)), 1e-10);
}

TEST(Cholesky, IllConditionedSolve) {
  // diag spanning 1e-10 .. 1 keeps the condition number at 1e10.
  std::vector<double> d;
  for (int i = 0; i <= 10; ++i) d.push_back(std::pow(10.0, -i));
  CsrMatrix m = CsrMatrix::diagonal(d);
  std::vector<double> b(d.size(), 1.0);
  EXPECT_LE(relative_residual(m, CholeskyFactor(m).solve(b), b), 1e-10);
}

TEST(Cholesky, SparsePathAboveThreshold) {
  const Index n = CholeskyFactor::kDenseThreshold + 500;
  CsrMatrix t = tridiag(-1, 2.5, -1, n);
  CholeskyFactor f(t);
  EXPECT_FALSE(f.is_dense());
  // A tridiagonal factor has no fill beyond the subdiagonal.
  EXPECT_EQ(f.factor_nnz(), static_cast<std::size_t>(2 * n - 1));
  std::mt19937_64 rng(52);
  auto b = oracle::random_vector(static_cast<std::size_t>(n), rng);
  EXPECT_LE(relative_residual(t, f.solve(b), b), 1e-12);
}

TEST(Cholesky, SparseAndDensePathsAgree) {
  // The factor of a leading principal block is the leading block of the
  // factor, so a matrix just above the threshold can be compared with its
  // leading 40 x 40 block factored densely.
  const Index big = CholeskyFactor::kDenseThreshold + 10;
  std::vector<Triplet> t;
  for (Index i = 0; i < big; ++i) {
    t.push_back({i, i, 4.0 + 0.01 * i});
    for (Index off : {1, 7}) {
      if (i + off < big) {
        t.push_back({i, i + off, -1.0 / off});
        t.push_back({i + off, i, -1.0 / off});
      }
    }
  }
  CsrMatrix a_big = CsrMatrix::from_triplets(big, big, t);
  std::vector<Triplet> lead;
  for (const Triplet& e : t)
    if (e.row < 40 && e.col < 40) lead.push_back(e);
  CholeskyFactor dense(CsrMatrix::from_triplets(40, 40, lead));
  CholeskyFactor sparse(a_big);
  ASSERT_TRUE(dense.is_dense());
  ASSERT_FALSE(sparse.is_dense());
  DenseMatrix ld = dense.lower(), ls = sparse.lower();
  double diff = 0.0;
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) diff = std::max(diff, std::abs(ld(i, j) - ls(i, j)));
  EXPECT_LE(diff, 1e-14);
}

TEST(Cholesky, NotPositiveDefinite) {
  EXPECT_THROW(CholeskyFactor(tridiag(1, 1, 1, 3)), NotPositiveDefiniteError);
  EXPECT_THROW(CholeskyFactor(tridiag(-1, -2, -1, 2500)), NotPositiveDefiniteError);
}

TEST(Cholesky, AsymmetricRejected) {
  EXPECT_THROW(CholeskyFactor(tridiag(0, 1, -1, 3)), NotSymmetricError);
  EXPECT_THROW(CholeskyFactor(CsrMatrix::zeros(2, 3)), NotSymmetricError);
}

TEST(Cholesky, RhsLengthChecked) {
  CholeskyFactor f(CsrMatrix::identity(3));
  std::vector<double> b(2, 1.0);
  EXPECT_THROW(f.solve(b), DimensionError);
}

TEST(DenseRank, MatchesOracle) {
  std::mt19937_64 rng(53);
  DenseMatrix g = oracle::random_dense(6, 3, rng);
  DenseMatrix low = g * oracle::random_dense(3, 8, rng);  // rank 3
  EXPECT_EQ(dense_rank(low), 3u);
  EXPECT_EQ(oracle::rank(low), 3u);
  DenseMatrix full = oracle::random_dense(5, 7, rng);
  EXPECT_EQ(dense_rank(full), 5u);
  EXPECT_EQ(dense_rank(DenseMatrix(3, 3)), 0u);
}

TEST(DenseOps, ProductsAndNorms) {
  DenseMatrix a(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(a * DenseMatrix::identity(2), a);
  EXPECT_EQ(transpose(a), DenseMatrix(2, 2, {1, 3, 2, 4}));
  std::vector<double> x{1, 1};
  EXPECT_EQ(a * std::span<const double>(x), (std::vector<double>{3, 7}));
  EXPECT_DOUBLE_EQ(frobenius_norm(a), std::sqrt(30.0));
}
