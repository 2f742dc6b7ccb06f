#pragma once

// Independent dense reference computations for the test suite. Nothing here
// calls into the library's solvers or factorizations.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "saddle/dense.hpp"
#include "saddle/krylov.hpp"
#include "saddle/sparse.hpp"

namespace oracle {

using saddle::DenseMatrix;
using Vec = std::vector<double>;

/// Gaussian elimination with partial pivoting.
Vec lu_solve(DenseMatrix a, Vec b);
DenseMatrix inverse(const DenseMatrix& a);

/// Textbook column Cholesky; throws std::runtime_error if not SPD.
DenseMatrix cholesky_lower(const DenseMatrix& a);
Vec cholesky_solve(const DenseMatrix& a, const Vec& b);

/// Row rank by modified Gram-Schmidt with a relative drop tolerance.
std::size_t rank(const DenseMatrix& a, double rel_tol = 1e-9);

/// Roots of z^3 + a2 z^2 + a1 z + a0 by Cardano's formula (complex arithmetic).
std::array<std::complex<double>, 3> cardano(double a2, double a1, double a0);

/// Roots of z^n + a[n-1] z^{n-1} + ... + a[0] by Durand-Kerner iteration
/// followed by Newton polishing on the original polynomial.
std::vector<std::complex<double>> polynomial_roots(const Vec& a);

/// Symmetric eigenvalues by cyclic Jacobi rotations, ascending.
Vec jacobi_eigenvalues(DenseMatrix a);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator_matrix(const saddle::LinearOperator& op, std::size_t n);

DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
Vec random_vector(std::size_t n, std::mt19937_64& rng);
/// Uniform on the unit sphere (normalized Gaussian).
Vec unit_sphere(std::size_t n, std::mt19937_64& rng);

double rel_diff(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace oracle
