#include "saddle/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "saddle/errors.hpp"

namespace saddle {

DenseMatrix::DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> values)
    : nrows_(nrows), ncols_(ncols), values_(std::move(values)) {
  if (values_.size() != nrows_ * ncols_) {
    throw DimensionError("DenseMatrix: value count does not match shape");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("dense multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("dense matvec: dimension mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double frobenius_norm(const DenseMatrix& a) { return norm2(a.data()); }

std::size_t dense_rank(const DenseMatrix& a, double rel_tol) {
  DenseMatrix w = a;
  const std::size_t nr = w.rows(), nc = w.cols();
  double scale = 0.0;
  for (double v : w.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double cutoff = rel_tol * scale;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(nr, nc); ++k) {
    std::size_t pr = k, pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < nr; ++i)
      for (std::size_t j = k; j < nc; ++j)
        if (std::abs(w(i, j)) > best) {
          best = std::abs(w(i, j));
          pr = i;
          pc = j;
        }
    if (best <= cutoff) break;
    if (pr != k)
      for (std::size_t j = 0; j < nc; ++j) std::swap(w(k, j), w(pr, j));
    if (pc != k)
      for (std::size_t i = 0; i < nr; ++i) std::swap(w(i, k), w(i, pc));
    for (std::size_t i = k + 1; i < nr; ++i) {
      double f = w(i, k) / w(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < nc; ++j) w(i, j) -= f * w(k, j);
    }
    ++rank;
  }
  return rank;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace saddle
