#pragma once

#include <optional>
#include <span>
#include <vector>

#include "saddle/sparse.hpp"

namespace saddle {

/// Sign convention of the block operator.
///
/// Symmetric:    [A  B^T 0  ; B  0 C^T ; 0 C 0], right-hand side (f; g; h).
/// Nonsymmetric: [A  B^T 0  ; -B 0 -C^T; 0 C 0], right-hand side (f; -g; h).
/// The nonsymmetric operator has a positive semidefinite symmetric part.
enum class Form { Symmetric, Nonsymmetric };

/// A vector partitioned as (x; y; z) with one contiguous backing store.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(Index n, Index m, Index l, double fill = 0.0);
  BlockVector(std::span<const double> x, std::span<const double> y, std::span<const double> z);

  Index n() const { return n_; }
  Index m() const { return m_; }
  Index l() const { return l_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> x() { return {data_.data(), static_cast<std::size_t>(n_)}; }
  std::span<double> y() { return {data_.data() + n_, static_cast<std::size_t>(m_)}; }
  std::span<double> z() { return {data_.data() + n_ + m_, static_cast<std::size_t>(l_)}; }
  std::span<const double> x() const { return {data_.data(), static_cast<std::size_t>(n_)}; }
  std::span<const double> y() const {
    return {data_.data() + n_, static_cast<std::size_t>(m_)};
  }
  std::span<const double> z() const {
    return {data_.data() + n_ + m_, static_cast<std::size_t>(l_)};
  }

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  BlockVector& operator+=(const BlockVector& o);
  BlockVector& operator-=(const BlockVector& o);
  BlockVector& operator*=(double s);

  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  Index n_ = 0, m_ = 0, l_ = 0;
  std::vector<double> data_;
};

BlockVector operator+(BlockVector a, const BlockVector& b);
BlockVector operator-(BlockVector a, const BlockVector& b);
BlockVector operator*(double s, BlockVector a);
double norm2(const BlockVector& v);

/// Three-by-three block saddle point system. Immutable after assembly.
class SaddlePointSystem {
 public:
  Index n() const { return a_.rows(); }
  Index m() const { return b_.rows(); }
  Index l() const { return c_.rows(); }
  Index order() const { return n() + m() + l(); }

  const CsrMatrix& a() const { return a_; }
  const CsrMatrix& b() const { return b_; }
  const CsrMatrix& c() const { return c_; }
  const std::vector<double>& f() const { return f_; }
  const std::vector<double>& g() const { return g_; }
  const std::vector<double>& h() const { return h_; }
  Form form() const { return form_; }

  /// (f; g; h) for the symmetric form, (f; -g; h) for the nonsymmetric one.
  BlockVector rhs() const;

  /// Same blocks, other sign convention. Solutions are preserved.
  SaddlePointSystem with_form(Form form) const;

  BlockVector zero_vector() const { return BlockVector(n(), m(), l()); }

  /// Throws DimensionError on shape mismatch and NotSymmetricError when a is
  /// not symmetric to 1e-12. Rank of b and c is a documented precondition.
  friend SaddlePointSystem assemble(CsrMatrix a, CsrMatrix b, CsrMatrix c, std::vector<double> f,
                                    std::vector<double> g, std::vector<double> h, Form form);

 private:
  CsrMatrix a_, b_, c_;
  std::vector<double> f_, g_, h_;
  Form form_ = Form::Nonsymmetric;
};

SaddlePointSystem assemble(CsrMatrix a, CsrMatrix b, CsrMatrix c, std::vector<double> f,
                           std::vector<double> g, std::vector<double> h, Form form);

/// System whose right-hand side is the operator applied to `solution`.
/// The (f, g, h) stored are those of the symmetric form, so both forms share
/// the same exact solution.
SaddlePointSystem assemble_with_solution(CsrMatrix a, CsrMatrix b, CsrMatrix c,
                                         const BlockVector& solution, Form form);

/// Blockwise operator product under the system's form.
void apply_operator(const SaddlePointSystem& s, std::span<const double> v, std::span<double> out);
BlockVector apply_operator(const SaddlePointSystem& s, const BlockVector& v);

/// The monolithic matrix of the operator; for tests and dense oracles.
CsrMatrix assemble_monolithic(const SaddlePointSystem& s);

struct SolveMetrics {
  double relative_residual = 0.0;
  std::optional<double> relative_error;
};

/// R_k = ||b - Op u_k|| / ||b|| (denominator 1 when b = 0) and, when
/// `u_star` is given, E_k = ||u_k - u*|| / ||u*|| (denominator 1 when u* = 0).
SolveMetrics residual_metrics(const SaddlePointSystem& s, const BlockVector& u_k,
                              const BlockVector* u_star = nullptr);

}  // namespace saddle
