#include "saddle/cholesky.hpp"

#include <cmath>
#include <string>

#include "saddle/errors.hpp"

namespace saddle {

namespace {

[[noreturn]] void not_pd(Index k, double pivot) {
  throw NotPositiveDefiniteError("cholesky: matrix is not positive definite (pivot " +
                                 std::to_string(k) + " = " + std::to_string(pivot) + ")");
}

// Elimination tree of a symmetric matrix given by its rows; only entries
// left of the diagonal are consulted.
std::vector<Index> elimination_tree(const CsrMatrix& m) {
  const Index n = m.rows();
  auto o = m.row_offsets();
  auto c = m.col_indices();
  std::vector<Index> parent(static_cast<std::size_t>(n), -1);
  std::vector<Index> ancestor(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n; ++k) {
    for (Index p = o[k]; p < o[k + 1]; ++p) {
      Index i = c[p];
      while (i != -1 && i < k) {
        Index next = ancestor[i];
        ancestor[i] = k;
        if (next == -1) {
          parent[i] = k;
          break;
        }
        i = next;
      }
    }
  }
  return parent;
}

// Nonzero pattern of row k of L (excluding the diagonal), written to
// stack[top..n) in topological order.
Index row_pattern(const CsrMatrix& m, Index k, const std::vector<Index>& parent,
                  std::vector<Index>& stack, std::vector<Index>& flag) {
  const Index n = m.rows();
  auto o = m.row_offsets();
  auto c = m.col_indices();
  Index top = n;
  flag[k] = k;
  for (Index p = o[k]; p < o[k + 1]; ++p) {
    Index i = c[p];
    if (i > k) continue;
    Index len = 0;
    for (; flag[i] != k; i = parent[i]) {
      stack[len++] = i;
      flag[i] = k;
    }
    while (len > 0) stack[--top] = stack[--len];
  }
  return top;
}

}  // namespace

CholeskyFactor::CholeskyFactor(const CsrMatrix& m) : order_(m.rows()) {
  if (m.rows() != m.cols()) throw NotSymmetricError("cholesky: matrix is not square");
  if (!m.is_symmetric(1e-12)) throw NotSymmetricError("cholesky: matrix is not symmetric");
  dense_ = order_ <= kDenseThreshold;
  if (dense_) {
    factor_dense(m);
  } else {
    factor_sparse(m);
  }
}

void CholeskyFactor::factor_dense(const CsrMatrix& m) {
  const auto n = static_cast<std::size_t>(order_);
  dense_l_.assign(n * n, 0.0);
  auto o = m.row_offsets();
  auto c = m.col_indices();
  auto v = m.values();
  for (std::size_t i = 0; i < n; ++i) {
    double* li = dense_l_.data() + i * n;
    for (Index p = o[i]; p < o[i + 1]; ++p) {
      if (static_cast<std::size_t>(c[p]) <= i) li[c[p]] = v[p];
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double* lj = dense_l_.data() + j * n;
      double s = li[j];
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      if (j == i) {
        if (!(s > 0.0) || !std::isfinite(s)) not_pd(static_cast<Index>(i), s);
        li[i] = std::sqrt(s);
      } else {
        li[j] = s / lj[j];
      }
    }
  }
}

void CholeskyFactor::factor_sparse(const CsrMatrix& m) {
  const Index n = order_;
  auto o = m.row_offsets();
  auto c = m.col_indices();
  auto v = m.values();
  std::vector<Index> parent = elimination_tree(m);
  std::vector<Index> stack(static_cast<std::size_t>(n));
  std::vector<Index> flag(static_cast<std::size_t>(n), -1);

  // Symbolic pass: column counts from the row patterns.
  std::vector<Index> counts(static_cast<std::size_t>(n), 1);
  for (Index k = 0; k < n; ++k) {
    Index top = row_pattern(m, k, parent, stack, flag);
    for (Index t = top; t < n; ++t) ++counts[stack[t]];
  }
  col_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index j = 0; j < n; ++j) col_offsets_[j + 1] = col_offsets_[j] + counts[j];
  row_indices_.assign(static_cast<std::size_t>(col_offsets_[n]), 0);
  values_.assign(static_cast<std::size_t>(col_offsets_[n]), 0.0);

  // Numeric pass: row k of L solves a triangular system with L(0:k,0:k).
  std::vector<Index> next(col_offsets_.begin(), col_offsets_.end() - 1);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  std::fill(flag.begin(), flag.end(), -1);
  for (Index k = 0; k < n; ++k) {
    Index top = row_pattern(m, k, parent, stack, flag);
    double d = 0.0;
    for (Index p = o[k]; p < o[k + 1]; ++p) {
      if (c[p] < k) x[c[p]] = v[p];
      if (c[p] == k) d = v[p];
    }
    for (Index t = top; t < n; ++t) {
      Index i = stack[t];
      double lki = x[i] / values_[col_offsets_[i]];
      x[i] = 0.0;
      for (Index p = col_offsets_[i] + 1; p < next[i]; ++p) {
        x[row_indices_[p]] -= values_[p] * lki;
      }
      d -= lki * lki;
      Index slot = next[i]++;
      row_indices_[slot] = k;
      values_[slot] = lki;
    }
    if (!(d > 0.0) || !std::isfinite(d)) not_pd(k, d);
    Index slot = next[k]++;
    row_indices_[slot] = k;
    values_[slot] = std::sqrt(d);
  }
}

std::size_t CholeskyFactor::factor_nnz() const {
  if (!dense_) return values_.size();
  auto n = static_cast<std::size_t>(order_);
  return n * (n + 1) / 2;
}

void CholeskyFactor::solve_in_place(std::span<double> b) const {
  if (b.size() != static_cast<std::size_t>(order_)) {
    throw DimensionError("cholesky solve: right-hand side length mismatch");
  }
  const auto n = static_cast<std::size_t>(order_);
  if (dense_) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* li = dense_l_.data() + i * n;
      double s = b[i];
      for (std::size_t k = 0; k < i; ++k) s -= li[k] * b[k];
      b[i] = s / li[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      const double* li = dense_l_.data() + i * n;
      b[i] /= li[i];
      double xi = b[i];
      for (std::size_t k = 0; k < i; ++k) b[k] -= li[k] * xi;
    }
    return;
  }
  for (Index j = 0; j < order_; ++j) {
    b[j] /= values_[col_offsets_[j]];
    double xj = b[j];
    for (Index p = col_offsets_[j] + 1; p < col_offsets_[j + 1]; ++p) {
      b[row_indices_[p]] -= values_[p] * xj;
    }
  }
  for (Index j = order_; j-- > 0;) {
    double s = b[j];
    for (Index p = col_offsets_[j] + 1; p < col_offsets_[j + 1]; ++p) {
      s -= values_[p] * b[row_indices_[p]];
    }
    b[j] = s / values_[col_offsets_[j]];
  }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

DenseMatrix CholeskyFactor::lower() const {
  const auto n = static_cast<std::size_t>(order_);
  DenseMatrix l(n, n);
  if (dense_) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) l(i, j) = dense_l_[i * n + j];
    return l;
  }
  for (Index j = 0; j < order_; ++j)
    for (Index p = col_offsets_[j]; p < col_offsets_[j + 1]; ++p) l(row_indices_[p], j) = values_[p];
  return l;
}

}  // namespace saddle
