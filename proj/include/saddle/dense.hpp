#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace saddle {

/// Small row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t nrows, std::size_t ncols, double fill = 0.0)
      : nrows_(nrows), ncols_(ncols), values_(nrows * ncols, fill) {}
  DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> values);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * ncols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * ncols_ + j];
  }

  std::span<double> row(std::size_t i) { return {values_.data() + i * ncols_, ncols_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * ncols_, ncols_};
  }

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<double> values_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);
DenseMatrix transpose(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& a);

/// Numerical rank by Gaussian elimination with complete pivoting.
/// Pivots below `rel_tol * max|a|` count as zero.
std::size_t dense_rank(const DenseMatrix& a, double rel_tol = 1e-10);

// Vector helpers shared by the solvers.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace saddle
