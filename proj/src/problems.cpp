#include "saddle/problems.hpp"

#include <cmath>
#include <random>
#include <string>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

namespace {

BlockVector ones(Index n, Index m, Index l) { return BlockVector(n, m, l, 1.0); }

SaddlePointSystem with_ones(CsrMatrix a, CsrMatrix b, CsrMatrix c, Form form) {
  BlockVector u = ones(a.rows(), b.rows(), c.rows());
  return assemble_with_solution(std::move(a), std::move(b), std::move(c), u, form);
}

}  // namespace

BlockVector ones_solution(const SaddlePointSystem& s) { return ones(s.n(), s.m(), s.l()); }

SaddlePointSystem gen_example1(int p, Form form) {
  if (p < 2) throw std::invalid_argument("gen_example1: p must be at least 2");
  const double h = 1.0 / (p + 1);
  const CsrMatrix t = tridiag(-1.0, 2.0, -1.0, p, 1.0 / (h * h));
  const CsrMatrix f = tridiag(0.0, 1.0, -1.0, p, 1.0 / h);
  std::vector<double> e(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) e[k] = 1.0 + static_cast<double>(k) * p;
  const CsrMatrix id = CsrMatrix::identity(p);

  const CsrMatrix lap = add(kron(id, t), kron(t, id));
  const CsrMatrix blocks_a[] = {lap, lap};
  const CsrMatrix blocks_b[] = {kron(id, f), kron(f, id)};
  return with_ones(block_diagonal(blocks_a), hstack(blocks_b),
                   kron(CsrMatrix::diagonal(e), f), form);
}

SaddlePointSystem gen_example2(int p, Form form) {
  if (p < 2 || p > 64) throw std::invalid_argument("gen_example2: p must lie in [2, 64]");
  const Index pt = p * p;        // p~
  const Index ph = p * (p + 1);  // p^

  // 2 W^T W + I with w_ij = exp(-2((i/3)^2 + (j/3)^2)), 1-based. W is the
  // outer product g g^T with g_i = exp(-2 (i/3)^2), so W^T W = |g|^2 g g^T.
  // g underflows to zero past i ~ 56, which keeps the CSR block small.
  std::vector<double> g(static_cast<std::size_t>(ph));
  double gg = 0.0;
  for (Index i = 0; i < ph; ++i) {
    double x = (i + 1) / 3.0;
    g[i] = std::exp(-2.0 * x * x);
    gg += g[i] * g[i];
  }
  std::vector<Triplet> a1;
  for (Index i = 0; i < ph; ++i) {
    if (g[i] == 0.0) continue;
    for (Index j = 0; j < ph; ++j) {
      if (g[j] == 0.0) continue;
      a1.push_back({i, j, 2.0 * gg * (g[i] * g[j])});
    }
  }
  for (Index i = 0; i < ph; ++i) a1.push_back({i, i, 1.0});

  std::vector<double> d2(static_cast<std::size_t>(2 * pt)), d3(d2.size());
  for (Index j = 1; j <= 2 * pt; ++j) {
    d2[j - 1] = j <= pt ? 1.0 : 1e-5 * double(j - pt) * double(j - pt);
    d3[j - 1] = 1e-5 * double(j + pt) * double(j + pt);
  }

  std::vector<Triplet> eh;
  for (Index i = 0; i < p; ++i) {
    eh.push_back({i, i, 2.0});
    eh.push_back({i, i + 1, -1.0});
  }
  const CsrMatrix e_hat = CsrMatrix::from_triplets(p, p + 1, std::move(eh));
  const CsrMatrix id_p = CsrMatrix::identity(p);
  const CsrMatrix e_parts[] = {kron(e_hat, id_p), kron(id_p, e_hat)};
  const CsrMatrix e = vstack(e_parts);

  const CsrMatrix blocks_a[] = {CsrMatrix::from_triplets(ph, ph, std::move(a1)), CsrMatrix::diagonal(d2),
                                CsrMatrix::diagonal(d3)};
  const CsrMatrix id_m = CsrMatrix::identity(2 * pt);
  const std::vector<double> minus_one(static_cast<std::size_t>(2 * pt), -1.0);
  const CsrMatrix blocks_b[] = {e, CsrMatrix::diagonal(minus_one), id_m};
  return with_ones(block_diagonal(blocks_a), hstack(blocks_b), transpose(e), form);
}

SaddlePointSystem gen_random_small(Index n, Index m, Index l, std::uint64_t seed, Form form) {
  if (l < 1 || m < l || n < m) {
    throw DimensionError("gen_random_small: need 1 <= l <= m <= n");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto draw = [&](Index r, Index c) {
    DenseMatrix d(r, c);
    for (double& v : d.data()) v = dist(rng);
    return d;
  };

  DenseMatrix gm = draw(n, n);
  DenseMatrix a = transpose(gm) * gm;
  for (Index i = 0; i < n; ++i) a(i, i) += 1.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) a(j, i) = a(i, j);
  }

  auto full_rank = [&](Index r, Index c) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      DenseMatrix d = draw(r, c);
      if (dense_rank(d) == static_cast<std::size_t>(r)) return d;
    }
    throw std::runtime_error("gen_random_small: could not draw a full-rank block");
  };
  DenseMatrix b = full_rank(m, n);
  DenseMatrix c = full_rank(l, m);
  return with_ones(CsrMatrix::from_dense(a), CsrMatrix::from_dense(b), CsrMatrix::from_dense(c),
                   form);
}

}  // namespace saddle
