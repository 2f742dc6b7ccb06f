#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace saddle {

/// out = Op(in). Operators are applied to whole vectors; `out` never aliases `in`.
using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

struct IterationConfig {
  double tol = 1e-6;  ///< relative residual target
  int maxit = 1000;
  std::optional<int> restart;  ///< absent: full (unrestarted) GMRES
  bool record_history = true;
  std::optional<double> time_budget_seconds;
};

enum class SolveStatus { Converged, MaxIterations, Breakdown, InnerSolveFailure, TimeLimit };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  int iterations = 0;
  /// Last recursively updated relative residual (CG) or Hessenberg
  /// least-squares estimate (GMRES family).
  double final_relative_residual = 0.0;
  /// ||b - Op x|| / ||b|| recomputed from the returned iterate.
  double true_relative_residual = 0.0;
  /// One entry per iteration.
  std::vector<double> residual_history;
  SolveStatus status = SolveStatus::MaxIterations;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  std::optional<double> relative_error;
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// Thrown by a preconditioner whose inner solve failed; FGMRES turns it into
/// SolveStatus::InnerSolveFailure.
class InnerSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjugate gradients from a zero initial guess. Stops when the updated
/// residual satisfies ||r|| <= tol * ||rhs||; a nonpositive curvature p^T A p
/// ends the run with SolveStatus::Breakdown.
SolveResult cg_solve(const LinearOperator& op, std::span<const double> rhs,
                     const IterationConfig& cfg);

/// Right-preconditioned GMRES (modified Gram-Schmidt Arnoldi, Givens
/// rotations). The preconditioner must be a fixed linear map; it is applied
/// once more at the end to recover x = M^{-1} V y.
SolveResult gmres_solve(const LinearOperator& op, std::span<const double> rhs,
                        const LinearOperator* precond, const IterationConfig& cfg);

/// Flexible GMRES: keeps the preconditioned vectors Z so the preconditioner
/// may change between iterations.
SolveResult fgmres_solve(const LinearOperator& op, std::span<const double> rhs,
                         const LinearOperator* precond, const IterationConfig& cfg);

}  // namespace saddle
