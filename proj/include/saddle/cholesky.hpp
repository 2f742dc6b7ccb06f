#pragma once

#include <span>
#include <vector>

#include "saddle/dense.hpp"
#include "saddle/sparse.hpp"

namespace saddle {

/// L L^T factorization of a symmetric positive definite matrix.
///
/// Orders up to kDenseThreshold are factored in dense storage; larger ones use
/// an up-looking sparse factorization in the natural ordering.
class CholeskyFactor {
 public:
  static constexpr Index kDenseThreshold = 2000;

  /// Throws NotSymmetricError or NotPositiveDefiniteError.
  explicit CholeskyFactor(const CsrMatrix& m);

  Index order() const { return order_; }
  bool is_dense() const { return dense_; }
  std::size_t factor_nnz() const;

  void solve_in_place(std::span<double> b) const;
  std::vector<double> solve(std::span<const double> b) const;

  /// The lower factor expanded to dense storage.
  DenseMatrix lower() const;

 private:
  void factor_dense(const CsrMatrix& m);
  void factor_sparse(const CsrMatrix& m);

  Index order_ = 0;
  bool dense_ = true;
  // Dense path: row-major lower triangle.
  std::vector<double> dense_l_;
  // Sparse path: L in compressed columns, diagonal entry first in each column.
  std::vector<Index> col_offsets_;
  std::vector<Index> row_indices_;
  std::vector<double> values_;
};

inline CholeskyFactor cholesky_factor(const CsrMatrix& m) { return CholeskyFactor(m); }

}  // namespace saddle
