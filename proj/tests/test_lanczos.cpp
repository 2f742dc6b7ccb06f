#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "saddle/errors.hpp"
#include "saddle/lanczos.hpp"
#include "saddle/problems.hpp"

using namespace saddle;

TEST(Lanczos, Diagonal) {
  std::vector<double> d{1, 2, 3};
  EigBounds e = extreme_eigs_symmetric(CsrMatrix::diagonal(d));
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.lambda_min_est, 1.0, 1e-8);
  EXPECT_NEAR(e.lambda_max_est, 3.0, 1e-8);
}

TEST(Lanczos, ToeplitzClosedForm) {
  const int k = 10;
  EigBounds e = extreme_eigs_symmetric(tridiag(-1, 2, -1, k));
  const double c = std::cos(std::numbers::pi / (k + 1));
  EXPECT_NEAR(e.lambda_max_est, 2 + 2 * c, 1e-6);
  EXPECT_NEAR(e.lambda_min_est, 2 - 2 * c, 1e-6);
}

TEST(Lanczos, Example1GramAgainstJacobi) {
  CsrMatrix bbt = gram_rows(gen_example1(4).b());
  auto ev = oracle::jacobi_eigenvalues(bbt.to_dense());
  EigBounds e = extreme_eigs_symmetric(bbt);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.lambda_min_est, ev.front(), 1e-6 * ev.back());
  EXPECT_NEAR(e.lambda_max_est, ev.back(), 1e-6 * ev.back());
}

TEST(Lanczos, EstimatesInsideSpectrum) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20 + 15 * static_cast<std::size_t>(trial);
    DenseMatrix g = oracle::random_dense(n, n, rng);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (g(i, j) + g(j, i));
    auto ev = oracle::jacobi_eigenvalues(a);
    // Short runs give interior Ritz values; check containment for both.
    for (int maxit : {5, 0}) {
      EigBounds e = extreme_eigs_symmetric(CsrMatrix::from_dense(a), 1e-8, maxit);
      const double slack = 1e-10 * std::abs(ev.back());
      EXPECT_GE(e.lambda_min_est, ev.front() - slack);
      EXPECT_LE(e.lambda_max_est, ev.back() + slack);
      EXPECT_LE(e.lambda_min_est, e.lambda_max_est);
    }
  }
}

TEST(Lanczos, AsymmetricRejected) {
  EXPECT_THROW(extreme_eigs_symmetric(tridiag(0, 1, -1, 4)), NotSymmetricError);
}

TEST(TridiagonalEigen, MatchesJacobi) {
  std::vector<double> d{4, 1, 3, 2}, e{1, -0.5, 2};
  DenseMatrix t(4, 4);
  for (std::size_t i = 0; i < 4; ++i) t(i, i) = d[i];
  for (std::size_t i = 0; i < 3; ++i) t(i, i + 1) = t(i + 1, i) = e[i];
  auto ref = oracle::jacobi_eigenvalues(t);
  auto got = tridiagonal_eigen(d, e);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got.values[i], ref[i], 1e-12);
  std::vector<double> short_e{1};
  EXPECT_THROW(tridiagonal_eigen(d, short_e), DimensionError);
}
