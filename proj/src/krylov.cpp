#include "saddle/krylov.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Breakdown: return "breakdown";
    case SolveStatus::InnerSolveFailure: return "inner-solve-failure";
    case SolveStatus::TimeLimit: return "time-limit";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void validate(const IterationConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("IterationConfig: tol must be positive");
  if (cfg.maxit < 1) throw std::invalid_argument("IterationConfig: maxit must be at least 1");
  if (cfg.restart && *cfg.restart < 1) {
    throw std::invalid_argument("IterationConfig: restart must be at least 1");
  }
}

double true_residual(const LinearOperator& op, std::span<const double> rhs,
                     std::span<const double> x, double bnorm) {
  std::vector<double> r(rhs.size());
  op(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  return norm2(r) / bnorm;
}

// Arnoldi state for one GMRES cycle.
class ArnoldiCycle {
 public:
  ArnoldiCycle(std::size_t size, int capacity, bool flexible)
      : size_(size), flexible_(flexible) {
    basis_.reserve(static_cast<std::size_t>(capacity) + 1);
    if (flexible_) precond_basis_.reserve(static_cast<std::size_t>(capacity));
    hess_.reserve(static_cast<std::size_t>(capacity));
  }

  void start(std::span<const double> r, double beta) {
    basis_.clear();
    precond_basis_.clear();
    hess_.clear();
    cs_.clear();
    sn_.clear();
    g_.assign(1, beta);
    basis_.emplace_back(r.begin(), r.end());
    for (auto& v : basis_.back()) v /= beta;
  }

  int steps() const { return static_cast<int>(hess_.size()); }
  std::span<const double> last_basis() const { return basis_.back(); }

  /// Orthogonalizes w = Op(z) against the basis and updates the rotated
  /// least-squares problem. Returns the new residual norm estimate and sets
  /// `happy` on an invariant subspace.
  double extend(std::vector<double> z, std::vector<double> w, bool& happy) {
    const int k = steps();
    std::vector<double> h(static_cast<std::size_t>(k) + 2, 0.0);
    const double norm_before = norm2(w);
    for (int j = 0; j <= k; ++j) {
      h[j] = dot(basis_[j], w);
      axpy(-h[j], basis_[j], w);
    }
    double norm_after = norm2(w);
    if (norm_after < 0.7 * norm_before) {
      for (int j = 0; j <= k; ++j) {
        double corr = dot(basis_[j], w);
        h[j] += corr;
        axpy(-corr, basis_[j], w);
      }
      norm_after = norm2(w);
    }
    h[k + 1] = norm_after;
    happy = norm_after <= 1e-14 * norm_before || norm_after == 0.0;

    for (int j = 0; j < k; ++j) {
      double t = cs_[j] * h[j] + sn_[j] * h[j + 1];
      h[j + 1] = -sn_[j] * h[j] + cs_[j] * h[j + 1];
      h[j] = t;
    }
    double r = std::hypot(h[k], h[k + 1]);
    double c = r == 0.0 ? 1.0 : h[k] / r;
    double s = r == 0.0 ? 0.0 : h[k + 1] / r;
    cs_.push_back(c);
    sn_.push_back(s);
    h[k] = r;
    h[k + 1] = 0.0;
    g_.push_back(-s * g_[k]);
    g_[k] = c * g_[k];
    h.resize(static_cast<std::size_t>(k) + 1);
    hess_.push_back(std::move(h));
    if (flexible_) precond_basis_.push_back(std::move(z));

    if (!happy) {
      for (auto& v : w) v /= norm_after;
      basis_.push_back(std::move(w));
    }
    return std::abs(g_[k + 1]);
  }

  /// Solves the triangular least-squares system; false if it is singular.
  bool coefficients(std::vector<double>& y) const {
    const int k = steps();
    y.assign(static_cast<std::size_t>(k), 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g_[i];
      for (int j = i + 1; j < k; ++j) s -= hess_[j][i] * y[j];
      double d = hess_[i][i];
      if (d == 0.0 || !std::isfinite(d)) return false;
      y[i] = s / d;
    }
    return true;
  }

  /// Correction in the (preconditioned) search space: Z y or V y.
  std::vector<double> combine(const std::vector<double>& y) const {
    std::vector<double> out(size_, 0.0);
    const auto& space = flexible_ ? precond_basis_ : basis_;
    for (std::size_t j = 0; j < y.size(); ++j) axpy(y[j], space[j], out);
    return out;
  }

 private:
  std::size_t size_;
  bool flexible_;
  std::vector<std::vector<double>> basis_;
  std::vector<std::vector<double>> precond_basis_;
  std::vector<std::vector<double>> hess_;  // column j holds H(0..j, j) after rotation
  std::vector<double> cs_, sn_, g_;
};

SolveResult gmres_family(const LinearOperator& op, std::span<const double> rhs,
                         const LinearOperator* precond, const IterationConfig& cfg,
                         bool flexible) {
  validate(cfg);
  const auto t0 = Clock::now();
  const std::size_t size = rhs.size();
  SolveResult result;
  result.x.assign(size, 0.0);
  SolveReport& rep = result.report;
  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    rep.status = SolveStatus::Converged;
    rep.solve_seconds = seconds_since(t0);
    return result;
  }

  const int cycle_len = cfg.restart.value_or(cfg.maxit);
  ArnoldiCycle cycle(size, std::min(cycle_len, cfg.maxit), flexible);
  std::vector<double> r(rhs.begin(), rhs.end());
  double beta = bnorm;
  std::vector<double> y;

  auto apply_precond = [&](std::span<const double> v) {
    std::vector<double> z(size);
    if (precond == nullptr) {
      std::copy(v.begin(), v.end(), z.begin());
    } else {
      (*precond)(v, z);
    }
    return z;
  };

  // Adds the current cycle's correction to x. Returns false when the
  // least-squares system is singular.
  auto candidate = [&](std::vector<double>& x_out) -> bool {
    if (!cycle.coefficients(y)) return false;
    std::vector<double> corr = cycle.combine(y);
    if (!flexible && precond != nullptr) corr = apply_precond(corr);
    x_out = result.x;
    axpy(1.0, corr, x_out);
    return true;
  };

  bool done = false;
  while (!done) {
    cycle.start(r, beta);
    bool cycle_end = false;
    while (!cycle_end) {
      std::vector<double> z;
      try {
        z = apply_precond(cycle.last_basis());
      } catch (const InnerSolveError&) {
        rep.status = SolveStatus::InnerSolveFailure;
        done = true;
        break;
      }
      if (!all_finite(z)) {
        rep.status = SolveStatus::InnerSolveFailure;
        done = true;
        break;
      }
      std::vector<double> w(size);
      op(z, w);
      bool happy = false;
      double est = cycle.extend(std::move(z), std::move(w), happy) / bnorm;
      ++rep.iterations;
      rep.final_relative_residual = est;
      if (cfg.record_history) rep.residual_history.push_back(est);

      if (est <= cfg.tol || happy) {
        std::vector<double> x_try;
        if (!candidate(x_try)) {
          rep.status = SolveStatus::Breakdown;
          done = true;
          break;
        }
        double tr = true_residual(op, rhs, x_try, bnorm);
        if (tr <= cfg.tol) {
          result.x = std::move(x_try);
          rep.status = SolveStatus::Converged;
          done = true;
          break;
        }
        if (happy) {
          // Invariant subspace but the true residual disagrees: restart from it.
          result.x = std::move(x_try);
          cycle_end = true;
          break;
        }
      }
      if (rep.iterations >= cfg.maxit) {
        rep.status = SolveStatus::MaxIterations;
        cycle_end = true;
        done = true;
      } else if (cfg.time_budget_seconds && seconds_since(t0) > *cfg.time_budget_seconds) {
        rep.status = SolveStatus::TimeLimit;
        cycle_end = true;
        done = true;
      } else if (cycle.steps() >= cycle_len) {
        cycle_end = true;
      }
      if (cycle_end) {
        std::vector<double> x_new;
        if (!candidate(x_new)) {
          rep.status = SolveStatus::Breakdown;
          done = true;
          break;
        }
        result.x = std::move(x_new);
      }
    }
    if (!done) {
      op(result.x, r);
      for (std::size_t i = 0; i < size; ++i) r[i] = rhs[i] - r[i];
      beta = norm2(r);
      if (beta == 0.0) {
        rep.status = SolveStatus::Converged;
        done = true;
      }
    }
  }
  rep.true_relative_residual = true_residual(op, rhs, result.x, bnorm);
  rep.solve_seconds = seconds_since(t0);
  return result;
}

}  // namespace

SolveResult cg_solve(const LinearOperator& op, std::span<const double> rhs,
                     const IterationConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  const std::size_t size = rhs.size();
  SolveResult result;
  result.x.assign(size, 0.0);
  SolveReport& rep = result.report;
  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    rep.status = SolveStatus::Converged;
    rep.solve_seconds = seconds_since(t0);
    return result;
  }
  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> p = r;
  std::vector<double> ap(size);
  double rr = dot(r, r);
  rep.status = SolveStatus::MaxIterations;
  for (int it = 0; it < cfg.maxit; ++it) {
    op(p, ap);
    double curvature = dot(p, ap);
    if (!(curvature > 0.0) || !std::isfinite(curvature)) {
      rep.status = SolveStatus::Breakdown;
      break;
    }
    double alpha = rr / curvature;
    axpy(alpha, p, result.x);
    axpy(-alpha, ap, r);
    double rr_new = dot(r, r);
    double rel = std::sqrt(rr_new) / bnorm;
    ++rep.iterations;
    rep.final_relative_residual = rel;
    if (cfg.record_history) rep.residual_history.push_back(rel);
    if (rel <= cfg.tol) {
      rep.status = SolveStatus::Converged;
      break;
    }
    if (cfg.time_budget_seconds && seconds_since(t0) > *cfg.time_budget_seconds) {
      rep.status = SolveStatus::TimeLimit;
      break;
    }
    double ratio = rr_new / rr;
    for (std::size_t i = 0; i < size; ++i) p[i] = r[i] + ratio * p[i];
    rr = rr_new;
  }
  rep.true_relative_residual = true_residual(op, rhs, result.x, bnorm);
  rep.solve_seconds = seconds_since(t0);
  return result;
}

SolveResult gmres_solve(const LinearOperator& op, std::span<const double> rhs,
                        const LinearOperator* precond, const IterationConfig& cfg) {
  return gmres_family(op, rhs, precond, cfg, false);
}

SolveResult fgmres_solve(const LinearOperator& op, std::span<const double> rhs,
                         const LinearOperator* precond, const IterationConfig& cfg) {
  return gmres_family(op, rhs, precond, cfg, true);
}

}  // namespace saddle
