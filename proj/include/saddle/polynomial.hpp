#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "saddle/dense.hpp"

namespace saddle {

/// z^n + a_{n-1} z^{n-1} + ... + a_0 with the leading 1 implicit.
class MonicPolynomial {
 public:
  /// coefficients = (a_0, ..., a_{n-1}); the degree is their count (>= 1).
  explicit MonicPolynomial(std::vector<std::complex<double>> coefficients);
  static MonicPolynomial real(const std::vector<double>& coefficients);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  bool is_real() const;

  std::complex<double> operator()(std::complex<double> z) const;

  /// Frobenius companion matrix; real coefficients only.
  DenseMatrix companion() const;
  /// Roots as companion-matrix eigenvalues; real coefficients only.
  std::vector<std::complex<double>> roots() const;

 private:
  std::vector<std::complex<double>> coeffs_;
};

enum class BoundFamily { Cauchy, Montel, CarmichaelMason, Frobenius };
std::string_view to_string(BoundFamily family);
inline constexpr BoundFamily kAllBoundFamilies[] = {BoundFamily::Cauchy, BoundFamily::Montel,
                                                    BoundFamily::CarmichaelMason,
                                                    BoundFamily::Frobenius};

/// lower <= |lambda| <= upper for every root lambda.
struct RootBounds {
  BoundFamily family;
  double lower;
  double upper;
};

/// Classical coefficient bounds on root moduli. Throws std::invalid_argument
/// for degree < 2.
RootBounds root_bounds(const MonicPolynomial& poly, BoundFamily family);

/// lambda^3 - lambda^2 + (p+q) lambda - q, or with centered = true its shift
/// mu = lambda - 1: mu^3 + 2 mu^2 + (1+p+q) mu + p.
MonicPolynomial cubic_from_pq(double p, double q, bool centered);

enum class ClusterCase { I, II };

/// Enclosure of |lambda - 1| for the roots of the cubic above.
/// Case I (p + q > 1): [p/(1+2p+q), 2+p+q) with a strict upper bound.
/// Case II:            [p/(2+p), 3].
struct ClusteringBounds {
  double lower;
  double upper;
  ClusterCase which;
  bool upper_strict;
};

ClusteringBounds clustering_bounds(double p, double q);

}  // namespace saddle
