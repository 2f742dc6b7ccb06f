#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "saddle/errors.hpp"
#include "saddle/lanczos.hpp"
#include "saddle/polynomial.hpp"
#include "saddle/preconditioners.hpp"
#include "saddle/system.hpp"

namespace saddle {

/// p = y*BA^{-1}B^T y / y*(aI+bBB^T)y,  q = y*C^T(aI+bCC^T)^{-1}C y / y*(aI+bBB^T)y.
struct SpectralQuantities {
  double p = 0.0;
  double q = 0.0;
  std::vector<double> y_used;
};

/// Holds the factors needed to evaluate (p, q) for many vectors y.
class PqEvaluator {
 public:
  PqEvaluator(const SaddlePointSystem& s, PreconditionerParams params);
  ~PqEvaluator();
  PqEvaluator(PqEvaluator&&) noexcept;
  PqEvaluator& operator=(PqEvaluator&&) noexcept;

  /// Throws std::invalid_argument for y = 0 or a length other than m.
  std::pair<double, double> operator()(std::span<const double> y) const;
  /// Complex y: the Hermitian forms split into the real forms of Re y and Im y.
  std::pair<double, double> operator()(std::span<const std::complex<double>> y) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralQuantities compute_pq(const SaddlePointSystem& s, PreconditionerParams params,
                              std::span<const double> y);

/// Extreme eigenvalues shared by the p+q interval and the parameter choice.
struct ExtremeSpectra {
  EigBounds a, bbt, cct, ctc;
};

/// Thrown when an extreme-eigenvalue estimate did not converge; carries
/// whatever was computed.
class SpectralEstimateError : public ConvergenceError {
 public:
  SpectralEstimateError(const std::string& what, ExtremeSpectra partial)
      : ConvergenceError(what), partial_(std::move(partial)) {}
  const ExtremeSpectra& partial() const { return partial_; }

 private:
  ExtremeSpectra partial_;
};

/// Lanczos estimates for A, BB^T, CC^T and C^T C.
ExtremeSpectra estimate_spectra(const SaddlePointSystem& s);

struct PqInterval {
  double lo;
  double hi;
};

/// Enclosure of p + q over all y != 0 from the extreme eigenvalues.
PqInterval pq_sum_interval(const ExtremeSpectra& spectra, PreconditionerParams params);
PqInterval pq_sum_interval(const SaddlePointSystem& s, PreconditionerParams params);

struct CaseConstants {
  double eta, theta, kappa, gamma, zeta;
  double eta_p, theta_p, kappa_p, gamma_p, zeta_p;
};

CaseConstants case_constants(const ExtremeSpectra& spectra);

/// Case I: beta = kappa/eta and alpha at half the upper limit, so p + q > 1.
/// Case II: beta = kappa'/eta' and alpha at its lower limit, so p + q <= 1.
/// A negative radicand throws ConvergenceError (inconsistent estimates).
PreconditionerParams suggest_parameters(const ExtremeSpectra& spectra, ClusterCase which);
PreconditionerParams suggest_parameters(const SaddlePointSystem& s, ClusterCase which);

}  // namespace saddle
