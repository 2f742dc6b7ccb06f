#include "saddle/theorem2.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "saddle/errors.hpp"
#include "saddle/spectral.hpp"

namespace saddle {

namespace {

constexpr Index kMaxOrder = 600;
// Middle blocks below this norm belong to eigenvectors of the form (x; 0; 0).
constexpr double kYThreshold = 1e-8;
constexpr double kCubicTol = 1e-6;
// Rounding allowance when comparing a computed |lambda - 1| with a bound.
constexpr double kBoundSlack = 1e-9;

}  // namespace

DenseMatrix preconditioned_matrix(const SaddlePointSystem& s, PreconditionerParams params) {
  if (s.order() > kMaxOrder) {
    throw DimensionError("preconditioned_matrix: order " + std::to_string(s.order()) +
                         " exceeds " + std::to_string(kMaxOrder));
  }
  const SaddlePointSystem ns = s.with_form(Form::Nonsymmetric);
  PreconditionerInstance m = build_m(ns, params, InnerMode::ExactCholesky);
  const auto order = static_cast<std::size_t>(ns.order());
  DenseMatrix out(order, order);
  std::vector<double> e(order, 0.0), ae(order), col(order);
  for (std::size_t j = 0; j < order; ++j) {
    e[j] = 1.0;
    apply_operator(ns, e, ae);
    m.apply(ae, col);
    for (std::size_t i = 0; i < order; ++i) out(i, j) = col[i];
    e[j] = 0.0;
  }
  return out;
}

Theorem2Report verify_theorem2(const SaddlePointSystem& s, PreconditionerParams params,
                               double tol) {
  Theorem2Report rep;
  rep.n = s.n();
  rep.m = s.m();
  rep.l = s.l();
  const DenseMatrix t = preconditioned_matrix(s, params);
  rep.eigen = dense_eigs(t, tol);
  rep.expected_unit_count = static_cast<int>(s.n() - s.m());
  rep.unit_count_ok = rep.eigen.unit_eigenvalue_count == rep.expected_unit_count;

  // null(B) lifted to (x; 0; 0).
  const auto order = static_cast<std::size_t>(s.order());
  const auto n = static_cast<std::size_t>(s.n());
  const auto m = static_cast<std::size_t>(s.m());
  DenseMatrix basis = null_space(s.b().to_dense());
  rep.null_space_dimension = static_cast<int>(basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    std::vector<double> v(order, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = basis(i, k);
    std::vector<double> tv = t * std::span<const double>(v);
    axpy(-1.0, v, tv);
    rep.max_null_residual = std::max(rep.max_null_residual, norm2(tv));
  }
  rep.null_vectors_ok = rep.max_null_residual <= 1e-10;

  PqEvaluator pq(s, params);
  rep.cubic_ok = true;
  rep.bounds_ok = true;
  for (const Complex& lam : rep.eigen.eigenvalues) {
    EigenpairCheck c;
    c.lambda = lam;
    std::vector<Complex> v = inverse_iteration(t, lam);
    std::vector<Complex> y(v.begin() + static_cast<std::ptrdiff_t>(n),
                           v.begin() + static_cast<std::ptrdiff_t>(n + m));
    double yy = 0.0;
    for (const Complex& z : y) yy += std::norm(z);
    c.y_norm = std::sqrt(yy);
    if (c.y_norm > kYThreshold) {
      c.checked = true;
      std::tie(c.p, c.q) = pq(std::span<const Complex>(y));
      const MonicPolynomial cubic = cubic_from_pq(c.p, c.q, false);
      const double a = std::abs(lam);
      const double scale = a * a * a + a * a + (c.p + c.q) * a + c.q;
      c.cubic_residual = std::abs(cubic(lam)) / (scale > 0.0 ? scale : 1.0);
      c.cubic_ok = c.cubic_residual <= kCubicTol;

      c.bounds = clustering_bounds(c.p, c.q);
      c.distance_to_one = std::abs(lam - 1.0);
      const bool above = c.distance_to_one >= c.bounds.lower * (1.0 - kBoundSlack) - kBoundSlack;
      const bool below = c.bounds.upper_strict
                             ? c.distance_to_one < c.bounds.upper
                             : c.distance_to_one <= c.bounds.upper * (1.0 + kBoundSlack);
      c.in_bounds = above && below;
      rep.cubic_ok = rep.cubic_ok && c.cubic_ok;
      rep.bounds_ok = rep.bounds_ok && c.in_bounds;
    }
    rep.pairs.push_back(c);
  }
  return rep;
}

}  // namespace saddle
