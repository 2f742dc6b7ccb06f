#pragma once

#include <span>
#include <vector>

#include "saddle/sparse.hpp"

namespace saddle {

/// Extreme Ritz values of a symmetric matrix.
///
/// Both estimates are Rayleigh quotients, so
/// lambda_min(m) <= lambda_min_est <= lambda_max_est <= lambda_max(m).
struct EigBounds {
  double lambda_min_est = 0.0;
  double lambda_max_est = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

/// Lanczos with full reorthogonalization.
///
/// Stops when the residual bound beta_k |s_k| of both extreme Ritz pairs falls
/// below tol * max|theta|, or when the Krylov space is exhausted. A maxit of 0
/// selects min(5 * order, 500). Throws NotSymmetricError.
EigBounds extreme_eigs_symmetric(const CsrMatrix& m, double tol = 1e-8, int maxit = 0);

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal (length n-1), sorted ascending, together with the last
/// component of each normalized eigenvector.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> last_components;
};
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag,
                                   std::span<const double> offdiag);

}  // namespace saddle
