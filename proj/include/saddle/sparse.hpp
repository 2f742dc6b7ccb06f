#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace saddle {

using Index = std::int32_t;

class DenseMatrix;

/// One (row, col, value) entry used to assemble a CsrMatrix.
struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row matrix.
///
/// Rows are sorted by column index without duplicates. Builders drop entries
/// that are exactly zero; the validating constructor keeps whatever it is
/// given as long as the structure is well formed.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Takes ownership of raw CSR arrays after validating their structure.
  CsrMatrix(Index nrows, Index ncols, std::vector<Index> row_offsets,
            std::vector<Index> col_indices, std::vector<double> values);

  /// Duplicate coordinates are summed, then exact zeros are pruned.
  static CsrMatrix from_triplets(Index nrows, Index ncols,
                                 std::vector<Triplet> entries);
  static CsrMatrix identity(Index n);
  static CsrMatrix diagonal(std::span<const double> diag);
  static CsrMatrix zeros(Index nrows, Index ncols);
  static CsrMatrix from_dense(const DenseMatrix& dense);

  Index rows() const { return nrows_; }
  Index cols() const { return ncols_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_offsets() const { return row_offsets_; }
  std::span<const Index> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  /// Entry lookup by binary search; absent entries read as zero.
  double operator()(Index row, Index col) const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y += alpha * A x.
  void multiply_add(std::span<const double> x, std::span<double> y,
                    double alpha = 1.0) const;
  /// y += alpha * A^T x.
  void multiply_transpose_add(std::span<const double> x, std::span<double> y,
                              double alpha = 1.0) const;

  std::vector<double> diagonal() const;
  double max_abs() const;

  /// Entrywise |a_ij - a_ji| <= tol * max|a|, with absent entries as zero.
  bool is_symmetric(double tol = 1e-12) const;

  DenseMatrix to_dense() const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  Index nrows_ = 0;
  Index ncols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

std::vector<double> matvec(const CsrMatrix& m, std::span<const double> v);

CsrMatrix transpose(const CsrMatrix& m);

/// Kronecker product; throws DimensionError if the result overflows Index.
CsrMatrix kron(const CsrMatrix& a, const CsrMatrix& b);

/// Constant-diagonal tridiagonal matrix scaled by `scale`.
CsrMatrix tridiag(double sub, double diag, double super, Index size,
                  double scale = 1.0);

/// Sparse-sparse product a * b.
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b);

/// a * a^T, computed with sorted-merge row accumulation.
CsrMatrix gram_rows(const CsrMatrix& a);

/// alpha * a + beta * b.
CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha = 1.0,
              double beta = 1.0);

/// alpha * I + beta * a for square a.
CsrMatrix shift(const CsrMatrix& a, double alpha, double beta = 1.0);

CsrMatrix scale_columns(const CsrMatrix& a, std::span<const double> factors);

CsrMatrix hstack(std::span<const CsrMatrix> blocks);
CsrMatrix vstack(std::span<const CsrMatrix> blocks);
CsrMatrix block_diagonal(std::span<const CsrMatrix> blocks);

}  // namespace saddle
