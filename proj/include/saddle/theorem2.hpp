#pragma once

#include <complex>
#include <vector>

#include "saddle/dense_eigs.hpp"
#include "saddle/polynomial.hpp"
#include "saddle/preconditioners.hpp"
#include "saddle/system.hpp"

namespace saddle {

/// One eigenpair of M^{-1} A checked against the cubic relation.
struct EigenpairCheck {
  Complex lambda;
  double y_norm = 0.0;  ///< middle block of the unit eigenvector
  bool checked = false;  ///< y_norm above tolerance, so (p, q) are defined
  double p = 0.0, q = 0.0;
  /// |c(lambda)| / (|lambda|^3 + |lambda|^2 + (p+q)|lambda| + q) for
  /// c(lambda) = lambda^3 - lambda^2 + (p+q) lambda - q.
  double cubic_residual = 0.0;
  bool cubic_ok = false;
  ClusteringBounds bounds{};
  double distance_to_one = 0.0;
  bool in_bounds = false;
};

struct Theorem2Report {
  Index n = 0, m = 0, l = 0;
  EigenReport eigen;
  int expected_unit_count = 0;  ///< n - m
  bool unit_count_ok = false;
  int null_space_dimension = 0;
  /// max ||M^{-1}A v - v|| over the lifted null(B) basis vectors v = (x; 0; 0).
  double max_null_residual = 0.0;
  bool null_vectors_ok = false;
  std::vector<EigenpairCheck> pairs;
  bool cubic_ok = false;
  bool bounds_ok = false;

  bool all_ok() const { return unit_count_ok && null_vectors_ok && cubic_ok && bounds_ok; }
};

/// Dense M^{-1} A (nonsymmetric form) of order <= 600, column by column.
DenseMatrix preconditioned_matrix(const SaddlePointSystem& s, PreconditionerParams params);

/// Checks the eigen-structure of M^{-1} A: exactly n - m eigenvalues within
/// tol of 1, null(B) lifted to eigenvectors for 1, and every eigenpair with a
/// nonzero middle block solving its own cubic and obeying clustering_bounds.
Theorem2Report verify_theorem2(const SaddlePointSystem& s, PreconditionerParams params,
                               double tol = 1e-6);

}  // namespace saddle
