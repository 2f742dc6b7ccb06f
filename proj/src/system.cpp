#include "saddle/system.hpp"

#include <algorithm>
#include <string>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

namespace {

void require_same_shape(const BlockVector& a, const BlockVector& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.l() != b.l()) {
    throw DimensionError("BlockVector: block sizes differ");
  }
}

void require_conforming(const SaddlePointSystem& s, std::size_t size) {
  if (size != static_cast<std::size_t>(s.order())) {
    throw DimensionError("saddle operator: vector length " + std::to_string(size) +
                         " does not match system order " + std::to_string(s.order()));
  }
}

}  // namespace

BlockVector::BlockVector(Index n, Index m, Index l, double fill)
    : n_(n), m_(m), l_(l), data_(static_cast<std::size_t>(n + m + l), fill) {}

BlockVector::BlockVector(std::span<const double> x, std::span<const double> y,
                         std::span<const double> z)
    : n_(static_cast<Index>(x.size())),
      m_(static_cast<Index>(y.size())),
      l_(static_cast<Index>(z.size())) {
  data_.reserve(x.size() + y.size() + z.size());
  data_.insert(data_.end(), x.begin(), x.end());
  data_.insert(data_.end(), y.begin(), y.end());
  data_.insert(data_.end(), z.begin(), z.end());
}

BlockVector& BlockVector::operator+=(const BlockVector& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

BlockVector& BlockVector::operator-=(const BlockVector& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

BlockVector& BlockVector::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

BlockVector operator+(BlockVector a, const BlockVector& b) { return a += b; }
BlockVector operator-(BlockVector a, const BlockVector& b) { return a -= b; }
BlockVector operator*(double s, BlockVector a) { return a *= s; }
double norm2(const BlockVector& v) { return norm2(v.flat()); }

SaddlePointSystem assemble(CsrMatrix a, CsrMatrix b, CsrMatrix c, std::vector<double> f,
                           std::vector<double> g, std::vector<double> h, Form form) {
  if (a.rows() != a.cols()) throw DimensionError("assemble: A must be square");
  if (b.cols() != a.rows()) throw DimensionError("assemble: B must have as many columns as A");
  if (c.cols() != b.rows()) throw DimensionError("assemble: C must have as many columns as B has rows");
  if (f.size() != static_cast<std::size_t>(a.rows()) ||
      g.size() != static_cast<std::size_t>(b.rows()) ||
      h.size() != static_cast<std::size_t>(c.rows())) {
    throw DimensionError("assemble: right-hand side blocks do not match (n, m, l)");
  }
  if (!a.is_symmetric(1e-12)) throw NotSymmetricError("assemble: A is not symmetric");
  SaddlePointSystem s;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.c_ = std::move(c);
  s.f_ = std::move(f);
  s.g_ = std::move(g);
  s.h_ = std::move(h);
  s.form_ = form;
  return s;
}

SaddlePointSystem assemble_with_solution(CsrMatrix a, CsrMatrix b, CsrMatrix c,
                                         const BlockVector& solution, Form form) {
  // Symmetric-form products: f = A x + B^T y, g = B x + C^T z, h = C y.
  std::vector<double> f(static_cast<std::size_t>(a.rows()), 0.0);
  std::vector<double> g(static_cast<std::size_t>(b.rows()), 0.0);
  std::vector<double> h(static_cast<std::size_t>(c.rows()), 0.0);
  if (solution.n() != a.rows() || solution.m() != b.rows() || solution.l() != c.rows()) {
    throw DimensionError("assemble_with_solution: solution does not conform");
  }
  a.multiply_add(solution.x(), f);
  b.multiply_transpose_add(solution.y(), f);
  b.multiply_add(solution.x(), g);
  c.multiply_transpose_add(solution.z(), g);
  c.multiply_add(solution.y(), h);
  return assemble(std::move(a), std::move(b), std::move(c), std::move(f), std::move(g),
                  std::move(h), form);
}

BlockVector SaddlePointSystem::rhs() const {
  BlockVector r(f_, g_, h_);
  if (form_ == Form::Nonsymmetric) {
    for (auto& v : r.y()) v = -v;
  }
  return r;
}

SaddlePointSystem SaddlePointSystem::with_form(Form form) const {
  SaddlePointSystem s = *this;
  s.form_ = form;
  return s;
}

void apply_operator(const SaddlePointSystem& s, std::span<const double> v, std::span<double> out) {
  require_conforming(s, v.size());
  require_conforming(s, out.size());
  const auto n = static_cast<std::size_t>(s.n());
  const auto m = static_cast<std::size_t>(s.m());
  const auto l = static_cast<std::size_t>(s.l());
  auto x = v.subspan(0, n);
  auto y = v.subspan(n, m);
  auto z = v.subspan(n + m, l);
  auto ox = out.subspan(0, n);
  auto oy = out.subspan(n, m);
  auto oz = out.subspan(n + m, l);
  const double sign = s.form() == Form::Nonsymmetric ? -1.0 : 1.0;

  s.a().multiply(x, ox);
  s.b().multiply_transpose_add(y, ox);
  s.b().multiply(x, oy);
  s.c().multiply_transpose_add(z, oy);
  if (sign < 0.0) {
    for (auto& t : oy) t = -t;
  }
  s.c().multiply(y, oz);
}

BlockVector apply_operator(const SaddlePointSystem& s, const BlockVector& v) {
  if (v.n() != s.n() || v.m() != s.m() || v.l() != s.l()) {
    throw DimensionError("apply_operator: block vector does not conform to the system");
  }
  BlockVector out = s.zero_vector();
  apply_operator(s, v.flat(), out.flat());
  return out;
}

CsrMatrix assemble_monolithic(const SaddlePointSystem& s) {
  const double sign = s.form() == Form::Nonsymmetric ? -1.0 : 1.0;
  std::vector<Triplet> entries;
  auto push = [&](const CsrMatrix& blk, Index row0, Index col0, double scale, bool transposed) {
    auto o = blk.row_offsets();
    auto c = blk.col_indices();
    auto v = blk.values();
    for (Index i = 0; i < blk.rows(); ++i) {
      for (Index p = o[i]; p < o[i + 1]; ++p) {
        if (transposed) {
          entries.push_back({row0 + c[p], col0 + i, scale * v[p]});
        } else {
          entries.push_back({row0 + i, col0 + c[p], scale * v[p]});
        }
      }
    }
  };
  const Index n = s.n(), m = s.m();
  push(s.a(), 0, 0, 1.0, false);
  push(s.b(), 0, n, 1.0, true);
  push(s.b(), n, 0, sign, false);
  push(s.c(), n, n + m, sign, true);
  push(s.c(), n + m, n, 1.0, false);
  return CsrMatrix::from_triplets(s.order(), s.order(), std::move(entries));
}

SolveMetrics residual_metrics(const SaddlePointSystem& s, const BlockVector& u_k,
                              const BlockVector* u_star) {
  BlockVector b = s.rhs();
  BlockVector r = b - apply_operator(s, u_k);
  double bnorm = norm2(b);
  SolveMetrics out;
  out.relative_residual = norm2(r) / (bnorm > 0.0 ? bnorm : 1.0);
  if (u_star != nullptr) {
    double snorm = norm2(*u_star);
    out.relative_error = norm2(u_k - *u_star) / (snorm > 0.0 ? snorm : 1.0);
  }
  return out;
}

}  // namespace saddle
