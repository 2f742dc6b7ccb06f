#pragma once

#include <memory>
#include <string_view>

#include "saddle/krylov.hpp"
#include "saddle/system.hpp"

namespace saddle {

enum class PreconditionerKind { Identity, NewM, BD1, BD2, P1, P2, P3 };
enum class InnerMode { ExactCholesky, InexactCG };

std::string_view to_string(PreconditionerKind kind);
std::string_view to_string(InnerMode mode);

struct PreconditionerParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Stopping rule of the inner CG solves: residual reduced by 1e3 or 500 steps.
struct InnerSolveRule {
  double tol = 1e-3;
  int maxit = 500;
};

/// Thrown for preconditioner/mode combinations that are not defined (BD1 with
/// inexact inner solves).
class UnsupportedModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A prepared preconditioner. Copies share the prepared blocks; application is
/// reentrant (scratch is call-local).
///
/// Blocks, with S^ = B diag(A)^{-1} B^T and X = C S^{-1} C^T:
///   NewM   diag(A, aI + bBB^T, aI + bCC^T)
///   BD1    diag(A, S, C S^{-1} C^T) with the exact S = B A^{-1} B^T
///   BD2    diag(diag(A), S^, X)
///   P1/P2  [A 0 0; B -S^ C^T; 0 0 -X] / same with +X
///   P3     [A B^T 0; B -S^ C^T; 0 0 -X]
class PreconditionerInstance {
 public:
  PreconditionerKind kind() const;
  InnerMode inner_mode() const;
  const std::optional<PreconditionerParams>& params() const;
  double setup_seconds() const;
  /// Total inner CG iterations performed by all applications so far.
  long inner_iterations() const;

  void apply(std::span<const double> r, std::span<double> z) const;
  BlockVector apply(const BlockVector& r) const;

  /// The application as a LinearOperator for the Krylov solvers. Keeps the
  /// prepared blocks alive.
  LinearOperator as_operator() const;

  struct Impl;

 private:
  explicit PreconditionerInstance(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;

  friend PreconditionerInstance build_identity(const SaddlePointSystem&);
  friend PreconditionerInstance build_m(const SaddlePointSystem&, PreconditionerParams, InnerMode,
                                        InnerSolveRule);
  friend PreconditionerInstance build_bd(const SaddlePointSystem&, PreconditionerKind, InnerMode,
                                         InnerSolveRule);
  friend PreconditionerInstance build_p123(const SaddlePointSystem&, PreconditionerKind, InnerMode,
                                           InnerSolveRule);
};

PreconditionerInstance build_identity(const SaddlePointSystem& s);

/// Throws std::invalid_argument unless alpha, beta > 0, and
/// NotPositiveDefiniteError if a block fails to factor.
PreconditionerInstance build_m(const SaddlePointSystem& s, PreconditionerParams params,
                               InnerMode mode, InnerSolveRule rule = {});

/// variant is BD1 or BD2. BD1 needs ExactCholesky and m <= 2000.
PreconditionerInstance build_bd(const SaddlePointSystem& s, PreconditionerKind variant,
                                InnerMode mode, InnerSolveRule rule = {});

/// variant is P1, P2 or P3.
PreconditionerInstance build_p123(const SaddlePointSystem& s, PreconditionerKind variant,
                                  InnerMode mode, InnerSolveRule rule = {});

/// Dispatch on kind; params are required for NewM and ignored otherwise.
PreconditionerInstance build_preconditioner(const SaddlePointSystem& s, PreconditionerKind kind,
                                            std::optional<PreconditionerParams> params,
                                            InnerMode mode, InnerSolveRule rule = {});

BlockVector apply_preconditioner(const PreconditionerInstance& inst, const BlockVector& r);
/// Same as apply_preconditioner; requires kind NewM.
BlockVector apply_m(const PreconditionerInstance& inst, const BlockVector& r);

}  // namespace saddle
