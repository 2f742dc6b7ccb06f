#include "saddle/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw DimensionError(what);
}

// Accumulates one sparse row at a time: scatter into a dense workspace,
// remember touched columns, then emit them sorted with zeros dropped.
class RowAccumulator {
 public:
  explicit RowAccumulator(Index ncols)
      : work_(static_cast<std::size_t>(ncols), 0.0),
        mark_(static_cast<std::size_t>(ncols), false) {}

  void add(Index col, double v) {
    auto c = static_cast<std::size_t>(col);
    if (!mark_[c]) {
      mark_[c] = true;
      touched_.push_back(col);
    }
    work_[c] += v;
  }

  void flush(std::vector<Index>& cols, std::vector<double>& vals) {
    std::sort(touched_.begin(), touched_.end());
    for (Index c : touched_) {
      auto cc = static_cast<std::size_t>(c);
      if (work_[cc] != 0.0) {
        cols.push_back(c);
        vals.push_back(work_[cc]);
      }
      work_[cc] = 0.0;
      mark_[cc] = false;
    }
    touched_.clear();
  }

 private:
  std::vector<double> work_;
  std::vector<bool> mark_;
  std::vector<Index> touched_;
};

Index checked_mul(Index a, Index b) {
  std::int64_t r = static_cast<std::int64_t>(a) * static_cast<std::int64_t>(b);
  if (r > std::numeric_limits<Index>::max()) {
    throw DimensionError("kron: result dimension overflows the index type");
  }
  return static_cast<Index>(r);
}

}  // namespace

CsrMatrix::CsrMatrix(Index nrows, Index ncols, std::vector<Index> row_offsets,
                     std::vector<Index> col_indices, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  require(nrows_ >= 0 && ncols_ >= 0, "CsrMatrix: negative dimension");
  require(row_offsets_.size() == static_cast<std::size_t>(nrows_) + 1,
          "CsrMatrix: row_offsets must have nrows+1 entries");
  require(row_offsets_.front() == 0, "CsrMatrix: row_offsets[0] must be 0");
  require(col_indices_.size() == values_.size(),
          "CsrMatrix: col_indices and values differ in length");
  require(static_cast<std::size_t>(row_offsets_.back()) == values_.size(),
          "CsrMatrix: last row offset must equal the number of values");
  for (Index i = 0; i < nrows_; ++i) {
    require(row_offsets_[i] <= row_offsets_[i + 1],
            "CsrMatrix: row_offsets must be nondecreasing");
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      require(col_indices_[k] >= 0 && col_indices_[k] < ncols_,
              "CsrMatrix: column index out of range");
      if (k > row_offsets_[i]) {
        require(col_indices_[k - 1] < col_indices_[k],
                "CsrMatrix: column indices must be strictly increasing per row");
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(Index nrows, Index ncols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    require(t.row >= 0 && t.row < nrows && t.col >= 0 && t.col < ncols,
            "from_triplets: entry out of range");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Index> offsets(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(entries.size());
  vals.reserve(entries.size());
  std::size_t k = 0;
  for (Index i = 0; i < nrows; ++i) {
    while (k < entries.size() && entries[k].row == i) {
      Index c = entries[k].col;
      double sum = 0.0;
      while (k < entries.size() && entries[k].row == i && entries[k].col == c) {
        sum += entries[k].value;
        ++k;
      }
      if (sum != 0.0) {
        cols.push_back(c);
        vals.push_back(sum);
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix CsrMatrix::identity(Index n) {
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  return diagonal(ones);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> diag) {
  auto n = static_cast<Index>(diag.size());
  std::vector<Index> offsets(diag.size() + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < n; ++i) {
    if (diag[i] != 0.0) {
      cols.push_back(i);
      vals.push_back(diag[i]);
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix CsrMatrix::zeros(Index nrows, Index ncols) {
  return CsrMatrix(nrows, ncols, std::vector<Index>(static_cast<std::size_t>(nrows) + 1, 0),
                   {}, {});
}

CsrMatrix CsrMatrix::from_dense(const DenseMatrix& dense) {
  auto nrows = static_cast<Index>(dense.rows());
  auto ncols = static_cast<Index>(dense.cols());
  std::vector<Index> offsets(dense.rows() + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < nrows; ++i) {
    for (Index j = 0; j < ncols; ++j) {
      double v = dense(i, j);
      if (v != 0.0) {
        cols.push_back(j);
        vals.push_back(v);
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

double CsrMatrix::operator()(Index row, Index col) const {
  require(row >= 0 && row < nrows_ && col >= 0 && col < ncols_,
          "CsrMatrix: entry index out of range");
  auto first = col_indices_.begin() + row_offsets_[row];
  auto last = col_indices_.begin() + row_offsets_[row + 1];
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  require(x.size() == static_cast<std::size_t>(ncols_) &&
              y.size() == static_cast<std::size_t>(nrows_),
          "csr matvec: dimension mismatch");
  for (Index i = 0; i < nrows_; ++i) {
    double sum = 0.0;
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      sum += values_[k] * x[col_indices_[k]];
    }
    y[i] = sum;
  }
}

void CsrMatrix::multiply_add(std::span<const double> x, std::span<double> y,
                             double alpha) const {
  require(x.size() == static_cast<std::size_t>(ncols_) &&
              y.size() == static_cast<std::size_t>(nrows_),
          "csr matvec: dimension mismatch");
  for (Index i = 0; i < nrows_; ++i) {
    double sum = 0.0;
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      sum += values_[k] * x[col_indices_[k]];
    }
    y[i] += alpha * sum;
  }
}

void CsrMatrix::multiply_transpose_add(std::span<const double> x, std::span<double> y,
                                       double alpha) const {
  require(x.size() == static_cast<std::size_t>(nrows_) &&
              y.size() == static_cast<std::size_t>(ncols_),
          "csr transpose matvec: dimension mismatch");
  for (Index i = 0; i < nrows_; ++i) {
    double xi = alpha * x[i];
    if (xi == 0.0) continue;
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      y[col_indices_[k]] += values_[k] * xi;
    }
  }
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(std::min(nrows_, ncols_)), 0.0);
  for (Index i = 0; i < static_cast<Index>(d.size()); ++i) d[i] = (*this)(i, i);
  return d;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (nrows_ != ncols_) return false;
  CsrMatrix t = transpose(*this);
  double bound = tol * max_abs();
  for (Index i = 0; i < nrows_; ++i) {
    Index ka = row_offsets_[i], ea = row_offsets_[i + 1];
    Index kb = t.row_offsets_[i], eb = t.row_offsets_[i + 1];
    while (ka < ea || kb < eb) {
      Index ca = ka < ea ? col_indices_[ka] : ncols_;
      Index cb = kb < eb ? t.col_indices_[kb] : ncols_;
      double diff;
      if (ca == cb) {
        diff = values_[ka++] - t.values_[kb++];
      } else if (ca < cb) {
        diff = values_[ka++];
      } else {
        diff = t.values_[kb++];
      }
      if (std::abs(diff) > bound) return false;
    }
  }
  return true;
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(static_cast<std::size_t>(nrows_), static_cast<std::size_t>(ncols_));
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      d(i, col_indices_[k]) = values_[k];
    }
  }
  return d;
}

std::vector<double> matvec(const CsrMatrix& m, std::span<const double> v) {
  if (v.size() != static_cast<std::size_t>(m.cols())) {
    throw DimensionError("matvec: vector length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(m.cols()) + " columns");
  }
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  m.multiply(v, out);
  return out;
}

CsrMatrix transpose(const CsrMatrix& m) {
  auto offsets_in = m.row_offsets();
  auto cols_in = m.col_indices();
  auto vals_in = m.values();
  std::vector<Index> offsets(static_cast<std::size_t>(m.cols()) + 1, 0);
  for (Index c : cols_in) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Index> next(offsets.begin(), offsets.end() - 1);
  std::vector<Index> cols(cols_in.size());
  std::vector<double> vals(vals_in.size());
  // Visiting rows in order leaves each output row sorted.
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = offsets_in[i]; k < offsets_in[i + 1]; ++k) {
      Index dst = next[cols_in[k]]++;
      cols[dst] = i;
      vals[dst] = vals_in[k];
    }
  }
  return CsrMatrix(m.cols(), m.rows(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix kron(const CsrMatrix& a, const CsrMatrix& b) {
  Index nrows = checked_mul(a.rows(), b.rows());
  Index ncols = checked_mul(a.cols(), b.cols());
  std::int64_t total = static_cast<std::int64_t>(a.nnz()) * b.nnz();
  if (total > std::numeric_limits<Index>::max()) {
    throw DimensionError("kron: number of stored entries overflows the index type");
  }
  auto ao = a.row_offsets(), ac = a.col_indices();
  auto av = a.values();
  auto bo = b.row_offsets(), bc = b.col_indices();
  auto bv = b.values();
  std::vector<Index> offsets(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(static_cast<std::size_t>(total));
  vals.reserve(static_cast<std::size_t>(total));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < b.rows(); ++k) {
      // Column blocks of a are visited in order, so the row stays sorted.
      for (Index pa = ao[i]; pa < ao[i + 1]; ++pa) {
        for (Index pb = bo[k]; pb < bo[k + 1]; ++pb) {
          double v = av[pa] * bv[pb];
          if (v == 0.0) continue;
          cols.push_back(ac[pa] * b.cols() + bc[pb]);
          vals.push_back(v);
        }
      }
      offsets[i * b.rows() + k + 1] = static_cast<Index>(cols.size());
    }
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix tridiag(double sub, double diag, double super, Index size, double scale) {
  if (size < 1) throw DimensionError("tridiag: size must be at least 1");
  std::vector<Triplet> entries;
  entries.reserve(3 * static_cast<std::size_t>(size));
  for (Index i = 0; i < size; ++i) {
    if (i > 0) entries.push_back({i, i - 1, scale * sub});
    entries.push_back({i, i, scale * diag});
    if (i + 1 < size) entries.push_back({i, i + 1, scale * super});
  }
  return CsrMatrix::from_triplets(size, size, std::move(entries));
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b) {
  require(a.cols() == b.rows(), "multiply: inner dimensions differ");
  auto ao = a.row_offsets(), ac = a.col_indices();
  auto av = a.values();
  auto bo = b.row_offsets(), bc = b.col_indices();
  auto bv = b.values();
  RowAccumulator acc(b.cols());
  std::vector<Index> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index pa = ao[i]; pa < ao[i + 1]; ++pa) {
      Index j = ac[pa];
      for (Index pb = bo[j]; pb < bo[j + 1]; ++pb) acc.add(bc[pb], av[pa] * bv[pb]);
    }
    acc.flush(cols, vals);
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix gram_rows(const CsrMatrix& a) {
  auto o = a.row_offsets();
  auto c = a.col_indices();
  auto v = a.values();
  std::vector<Index> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  // Rows sharing a column are found through the transpose pattern; each
  // inner product is then a sorted merge of two rows.
  CsrMatrix at = transpose(a);
  auto to = at.row_offsets();
  auto tc = at.col_indices();
  std::vector<Index> partners;
  std::vector<bool> seen(static_cast<std::size_t>(a.rows()), false);
  for (Index i = 0; i < a.rows(); ++i) {
    partners.clear();
    for (Index p = o[i]; p < o[i + 1]; ++p) {
      for (Index q = to[c[p]]; q < to[c[p] + 1]; ++q) {
        Index r = tc[q];
        if (!seen[r]) {
          seen[r] = true;
          partners.push_back(r);
        }
      }
    }
    std::sort(partners.begin(), partners.end());
    for (Index r : partners) {
      seen[r] = false;
      double sum = 0.0;
      Index p = o[i], pe = o[i + 1], q = o[r], qe = o[r + 1];
      while (p < pe && q < qe) {
        if (c[p] == c[q]) {
          sum += v[p++] * v[q++];
        } else if (c[p] < c[q]) {
          ++p;
        } else {
          ++q;
        }
      }
      if (sum != 0.0) {
        cols.push_back(r);
        vals.push_back(sum);
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(a.rows(), a.rows(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha, double beta) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shapes differ");
  auto ao = a.row_offsets(), ac = a.col_indices();
  auto av = a.values();
  auto bo = b.row_offsets(), bc = b.col_indices();
  auto bv = b.values();
  std::vector<Index> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));
  vals.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));
  auto emit = [&](Index col, double val) {
    if (val != 0.0) {
      cols.push_back(col);
      vals.push_back(val);
    }
  };
  for (Index i = 0; i < a.rows(); ++i) {
    Index p = ao[i], pe = ao[i + 1], q = bo[i], qe = bo[i + 1];
    while (p < pe || q < qe) {
      Index cp = p < pe ? ac[p] : a.cols();
      Index cq = q < qe ? bc[q] : a.cols();
      if (cp == cq) {
        emit(cp, alpha * av[p++] + beta * bv[q++]);
      } else if (cp < cq) {
        emit(cp, alpha * av[p++]);
      } else {
        emit(cq, beta * bv[q++]);
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix shift(const CsrMatrix& a, double alpha, double beta) {
  require(a.rows() == a.cols(), "shift: matrix must be square");
  return add(CsrMatrix::identity(a.rows()), a, alpha, beta);
}

CsrMatrix scale_columns(const CsrMatrix& a, std::span<const double> factors) {
  require(factors.size() == static_cast<std::size_t>(a.cols()),
          "scale_columns: factor count differs from column count");
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nnz()));
  auto o = a.row_offsets();
  auto c = a.col_indices();
  auto v = a.values();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index p = o[i]; p < o[i + 1]; ++p) entries.push_back({i, c[p], v[p] * factors[c[p]]});
  }
  return CsrMatrix::from_triplets(a.rows(), a.cols(), std::move(entries));
}

CsrMatrix hstack(std::span<const CsrMatrix> blocks) {
  require(!blocks.empty(), "hstack: no blocks");
  Index nrows = blocks.front().rows();
  Index ncols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == nrows, "hstack: row counts differ");
    ncols += b.cols();
  }
  std::vector<Index> offsets(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < nrows; ++i) {
    Index col_shift = 0;
    for (const auto& b : blocks) {
      auto o = b.row_offsets();
      auto c = b.col_indices();
      auto v = b.values();
      for (Index p = o[i]; p < o[i + 1]; ++p) {
        cols.push_back(c[p] + col_shift);
        vals.push_back(v[p]);
      }
      col_shift += b.cols();
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix vstack(std::span<const CsrMatrix> blocks) {
  require(!blocks.empty(), "vstack: no blocks");
  Index ncols = blocks.front().cols();
  Index nrows = 0;
  for (const auto& b : blocks) {
    require(b.cols() == ncols, "vstack: column counts differ");
    nrows += b.rows();
  }
  std::vector<Index> offsets{0};
  std::vector<Index> cols;
  std::vector<double> vals;
  for (const auto& b : blocks) {
    auto o = b.row_offsets();
    cols.insert(cols.end(), b.col_indices().begin(), b.col_indices().end());
    vals.insert(vals.end(), b.values().begin(), b.values().end());
    Index base = offsets.back();
    for (Index i = 0; i < b.rows(); ++i) offsets.push_back(base + o[i + 1]);
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix block_diagonal(std::span<const CsrMatrix> blocks) {
  Index nrows = 0, ncols = 0;
  for (const auto& b : blocks) {
    nrows += b.rows();
    ncols += b.cols();
  }
  std::vector<Index> offsets{0};
  std::vector<Index> cols;
  std::vector<double> vals;
  Index col_shift = 0;
  for (const auto& b : blocks) {
    auto o = b.row_offsets();
    auto c = b.col_indices();
    auto v = b.values();
    for (Index i = 0; i < b.rows(); ++i) {
      for (Index p = o[i]; p < o[i + 1]; ++p) {
        cols.push_back(c[p] + col_shift);
        vals.push_back(v[p]);
      }
      offsets.push_back(static_cast<Index>(cols.size()));
    }
    col_shift += b.cols();
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

}  // namespace saddle
