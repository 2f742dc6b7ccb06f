#include "saddle/spectral.hpp"

#include <cmath>
#include <string>

#include "saddle/cholesky.hpp"
#include "saddle/dense.hpp"

namespace saddle {

struct PqEvaluator::Impl {
  CsrMatrix b, c, d;  // d = aI + bBB^T
  CholeskyFactor a_factor;
  CholeskyFactor n_factor;  // aI + bCC^T

  Impl(const SaddlePointSystem& s, PreconditionerParams params)
      : b(s.b()),
        c(s.c()),
        d(shift(gram_rows(s.b()), params.alpha, params.beta)),
        a_factor(s.a()),
        n_factor(shift(gram_rows(s.c()), params.alpha, params.beta)) {}

  // The three real quadratic forms for one real vector.
  void forms(std::span<const double> y, double& p_num, double& q_num, double& den) const {
    std::vector<double> t(static_cast<std::size_t>(b.cols()), 0.0);
    b.multiply_transpose_add(y, t);
    std::vector<double> w = a_factor.solve(t);
    p_num += dot(t, w);

    std::vector<double> u(static_cast<std::size_t>(c.rows()));
    c.multiply(y, u);
    std::vector<double> v = n_factor.solve(u);
    q_num += dot(u, v);

    std::vector<double> dy(y.size());
    d.multiply(y, dy);
    den += dot(y, dy);
  }
};

PqEvaluator::PqEvaluator(const SaddlePointSystem& s, PreconditionerParams params) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0)) {
    throw std::invalid_argument("PqEvaluator: alpha and beta must be positive");
  }
  impl_ = std::make_unique<Impl>(s, params);
}

PqEvaluator::~PqEvaluator() = default;
PqEvaluator::PqEvaluator(PqEvaluator&&) noexcept = default;
PqEvaluator& PqEvaluator::operator=(PqEvaluator&&) noexcept = default;

std::pair<double, double> PqEvaluator::operator()(std::span<const double> y) const {
  if (y.size() != static_cast<std::size_t>(impl_->b.rows())) {
    throw DimensionError("compute_pq: y must have length m");
  }
  if (norm2(y) == 0.0) throw std::invalid_argument("compute_pq: y must be nonzero");
  double p_num = 0.0, q_num = 0.0, den = 0.0;
  impl_->forms(y, p_num, q_num, den);
  return {p_num / den, q_num / den};
}

std::pair<double, double> PqEvaluator::operator()(std::span<const std::complex<double>> y) const {
  if (y.size() != static_cast<std::size_t>(impl_->b.rows())) {
    throw DimensionError("compute_pq: y must have length m");
  }
  std::vector<double> re(y.size()), im(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    re[i] = y[i].real();
    im[i] = y[i].imag();
  }
  if (norm2(re) == 0.0 && norm2(im) == 0.0) {
    throw std::invalid_argument("compute_pq: y must be nonzero");
  }
  // For real symmetric K: y* K y = Re(y)^T K Re(y) + Im(y)^T K Im(y).
  double p_num = 0.0, q_num = 0.0, den = 0.0;
  impl_->forms(re, p_num, q_num, den);
  impl_->forms(im, p_num, q_num, den);
  return {p_num / den, q_num / den};
}

SpectralQuantities compute_pq(const SaddlePointSystem& s, PreconditionerParams params,
                              std::span<const double> y) {
  PqEvaluator eval(s, params);
  auto [p, q] = eval(y);
  return {p, q, std::vector<double>(y.begin(), y.end())};
}

ExtremeSpectra estimate_spectra(const SaddlePointSystem& s) {
  ExtremeSpectra out;
  auto run = [&](const CsrMatrix& m, EigBounds& slot, const char* name) {
    slot = extreme_eigs_symmetric(m);
    if (!slot.converged) {
      throw SpectralEstimateError(std::string("Lanczos did not converge for ") + name, out);
    }
  };
  run(s.a(), out.a, "A");
  run(gram_rows(s.b()), out.bbt, "BB^T");
  run(gram_rows(s.c()), out.cct, "CC^T");
  run(gram_rows(transpose(s.c())), out.ctc, "C^T C");
  return out;
}

PqInterval pq_sum_interval(const ExtremeSpectra& sp, PreconditionerParams params) {
  const double a = params.alpha, b = params.beta;
  // C^T C is positive semidefinite; a slightly negative estimate of its zero
  // eigenvalue is rounding.
  const double ctc_min = std::max(0.0, sp.ctc.lambda_min_est);
  const double lo = (sp.bbt.lambda_min_est / sp.a.lambda_max_est +
                     ctc_min / (a + b * sp.cct.lambda_max_est)) /
                    (a + b * sp.bbt.lambda_max_est);
  const double hi = (sp.bbt.lambda_max_est / sp.a.lambda_min_est +
                     sp.cct.lambda_max_est / (a + b * sp.cct.lambda_min_est)) /
                    (a + b * sp.bbt.lambda_min_est);
  return {lo, hi};
}

PqInterval pq_sum_interval(const SaddlePointSystem& s, PreconditionerParams params) {
  return pq_sum_interval(estimate_spectra(s), params);
}

CaseConstants case_constants(const ExtremeSpectra& sp) {
  CaseConstants k{};
  const double bb_min = sp.bbt.lambda_min_est, bb_max = sp.bbt.lambda_max_est;
  const double cc_min = sp.cct.lambda_min_est, cc_max = sp.cct.lambda_max_est;
  k.eta = bb_max + cc_max;
  k.theta = bb_max * cc_max;
  k.kappa = bb_min / sp.a.lambda_max_est;
  k.gamma = k.kappa * cc_max;
  k.zeta = std::max(0.0, sp.ctc.lambda_min_est);
  k.eta_p = bb_min + cc_min;
  k.theta_p = bb_min * cc_min;
  k.kappa_p = bb_max / sp.a.lambda_min_est;
  k.gamma_p = k.kappa_p * cc_min;
  k.zeta_p = cc_max;
  return k;
}

PreconditionerParams suggest_parameters(const ExtremeSpectra& spectra, ClusterCase which) {
  const CaseConstants k = case_constants(spectra);
  double beta, radicand;
  if (which == ClusterCase::I) {
    beta = k.kappa / k.eta;
    radicand = k.gamma * k.kappa / k.eta - k.theta * k.kappa * k.kappa / (k.eta * k.eta) + k.zeta;
  } else {
    beta = k.kappa_p / k.eta_p;
    radicand = k.gamma_p * k.kappa_p / k.eta_p -
               k.theta_p * k.kappa_p * k.kappa_p / (k.eta_p * k.eta_p) + k.zeta_p;
  }
  if (!(radicand > 0.0) || !(beta > 0.0) || !std::isfinite(beta)) {
    throw ConvergenceError("suggest_parameters: nonpositive radicand " + std::to_string(radicand) +
                           " (inconsistent eigenvalue estimates)");
  }
  const double limit = std::sqrt(radicand);
  return {which == ClusterCase::I ? 0.5 * limit : limit, beta};
}

PreconditionerParams suggest_parameters(const SaddlePointSystem& s, ClusterCase which) {
  return suggest_parameters(estimate_spectra(s), which);
}

}  // namespace saddle
