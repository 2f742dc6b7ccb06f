#include "saddle/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saddle/dense_eigs.hpp"
#include "saddle/errors.hpp"

namespace saddle {

MonicPolynomial::MonicPolynomial(std::vector<std::complex<double>> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("MonicPolynomial: degree must be at least 1");
}

MonicPolynomial MonicPolynomial::real(const std::vector<double>& coefficients) {
  return MonicPolynomial(std::vector<std::complex<double>>(coefficients.begin(), coefficients.end()));
}

bool MonicPolynomial::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const std::complex<double>& c) { return c.imag() == 0.0; });
}

std::complex<double> MonicPolynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 1.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DenseMatrix MonicPolynomial::companion() const {
  if (!is_real()) throw std::invalid_argument("companion: complex coefficients are not supported");
  const auto n = coeffs_.size();
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i + 1, i) = 1.0;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -coeffs_[i].real();
  return c;
}

std::vector<std::complex<double>> MonicPolynomial::roots() const {
  return eigenvalues(companion());
}

std::string_view to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::Cauchy: return "cauchy";
    case BoundFamily::Montel: return "montel";
    case BoundFamily::CarmichaelMason: return "carmichael-mason";
    case BoundFamily::Frobenius: return "frobenius";
  }
  return "unknown";
}

RootBounds root_bounds(const MonicPolynomial& poly, BoundFamily family) {
  const int n = poly.degree();
  if (n < 2) throw std::invalid_argument("root_bounds: degree must be at least 2");
  const auto& a = poly.coefficients();
  const double a0 = std::abs(a[0]);
  double max_rest = 0.0, sum_rest = 0.0, sq_rest = 0.0;
  for (int k = 1; k < n; ++k) {
    double ak = std::abs(a[k]);
    max_rest = std::max(max_rest, ak);
    sum_rest += ak;
    sq_rest += ak * ak;
  }
  RootBounds b{family, 0.0, 0.0};
  switch (family) {
    case BoundFamily::Cauchy:
      b.lower = a0 / std::max(1.0, a0 + max_rest);
      b.upper = std::max(a0, 1.0 + max_rest);
      break;
    case BoundFamily::Montel:
      b.lower = a0 / std::max(a0, 1.0 + sum_rest);
      b.upper = std::max(1.0, a0 + sum_rest);
      break;
    case BoundFamily::CarmichaelMason: {
      double r = std::sqrt(1.0 + a0 * a0 + sq_rest);
      b.lower = a0 / r;
      b.upper = r;
      break;
    }
    case BoundFamily::Frobenius:
      b.lower = a0 / std::sqrt(1.0 + (n - 1) * a0 * a0 + sq_rest);
      b.upper = std::sqrt((n - 1) + a0 * a0 + sq_rest);
      break;
  }
  return b;
}

MonicPolynomial cubic_from_pq(double p, double q, bool centered) {
  if (centered) return MonicPolynomial::real({p, 1.0 + p + q, 2.0});
  return MonicPolynomial::real({-q, p + q, -1.0});
}

ClusteringBounds clustering_bounds(double p, double q) {
  if (p + q > 1.0) return {p / (1.0 + 2.0 * p + q), 2.0 + p + q, ClusterCase::I, true};
  return {p / (2.0 + p), 3.0, ClusterCase::II, false};
}

}  // namespace saddle
