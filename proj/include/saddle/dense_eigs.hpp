#pragma once

#include <complex>
#include <vector>

#include "saddle/dense.hpp"

namespace saddle {

using Complex = std::complex<double>;

struct EigenReport {
  std::vector<Complex> eigenvalues;
  /// Eigenvalues with |lambda - 1| <= tol.
  int unit_eigenvalue_count = 0;
  double tol = 0.0;
};

/// All eigenvalues of a real square matrix: balancing, Householder reduction
/// to Hessenberg form, then Francis double-shift QR. Conjugate pairs are
/// adjacent, positive imaginary part first.
/// Throws ConvergenceError after 100 * order QR sweeps without deflation.
std::vector<Complex> eigenvalues(const DenseMatrix& a);

/// eigenvalues() plus the unit-eigenvalue count. Orders above 600 are rejected.
EigenReport dense_eigs(const DenseMatrix& a, double tol = 1e-6);

/// Unit-norm eigenvector for an eigenvalue estimate, by complex inverse iteration.
std::vector<Complex> inverse_iteration(const DenseMatrix& a, Complex lambda, int sweeps = 3);

/// Orthonormal basis of the null space of a (columns of the result), from a
/// rank-revealing elimination followed by Gram-Schmidt.
DenseMatrix null_space(const DenseMatrix& a, double rel_tol = 1e-10);

}  // namespace saddle
