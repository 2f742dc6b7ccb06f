#include "saddle/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag,
                                   std::span<const double> offdiag) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (offdiag.size() + 1 != diag.size()) {
    throw DimensionError("tridiagonal_eigen: off-diagonal must have n-1 entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  // Only the last row of the eigenvector matrix is tracked; each rotation
  // acts on rows independently.
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  z[n - 1] = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) throw ConvergenceError("tridiagonal_eigen: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  for (std::size_t k : order) {
    out.values.push_back(d[k]);
    out.last_components.push_back(z[k]);
  }
  return out;
}

namespace {

void orthogonalize(const std::vector<std::vector<double>>& basis, std::span<double> w) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) axpy(-dot(q, w), q, w);
  }
}

}  // namespace

EigBounds extreme_eigs_symmetric(const CsrMatrix& m, double tol, int maxit) {
  if (m.rows() != m.cols() || !m.is_symmetric(1e-12)) {
    throw NotSymmetricError("extreme_eigs_symmetric: matrix is not symmetric");
  }
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) throw DimensionError("extreme_eigs_symmetric: empty matrix");
  if (maxit <= 0) maxit = static_cast<int>(std::min<std::size_t>(5 * n, 500));

  std::mt19937_64 rng(20200101);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto random_unit = [&](std::vector<double>& v) {
    for (auto& x : v) x = dist(rng);
  };

  std::vector<std::vector<double>> basis;
  std::vector<double> alphas, betas;
  std::vector<double> v(n), w(n);
  random_unit(v);
  {
    double nv = norm2(v);
    for (auto& x : v) x /= nv;
  }

  EigBounds out;
  double prev_beta = 0.0;
  for (int j = 0; j < maxit; ++j) {
    m.multiply(v, w);
    double alpha = dot(v, w);
    axpy(-alpha, v, w);
    if (!basis.empty()) axpy(-prev_beta, basis.back(), w);
    basis.push_back(v);
    orthogonalize(basis, w);
    alphas.push_back(alpha);
    double beta = norm2(w);

    TridiagonalEigen ritz = tridiagonal_eigen(alphas, betas);
    double theta_min = ritz.values.front();
    double theta_max = ritz.values.back();
    double scale = std::max({std::abs(theta_min), std::abs(theta_max),
                             std::numeric_limits<double>::min()});
    out.lambda_min_est = theta_min;
    out.lambda_max_est = theta_max;
    out.iterations_used = j + 1;

    if (basis.size() == n) {
      out.converged = true;
      return out;
    }
    if (beta <= 1e-12 * scale) {
      // Invariant subspace: continue in the orthogonal complement.
      random_unit(w);
      orthogonalize(basis, w);
      beta = norm2(w);
      if (beta <= 1e-12) {
        out.converged = true;
        return out;
      }
      for (auto& x : w) x /= beta;
      v = w;
      betas.push_back(0.0);
      prev_beta = 0.0;
      continue;
    }
    double res_min = beta * std::abs(ritz.last_components.front());
    double res_max = beta * std::abs(ritz.last_components.back());
    if (res_min <= tol * scale && res_max <= tol * scale) {
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / beta;
    betas.push_back(beta);
    prev_beta = beta;
  }
  return out;
}

}  // namespace saddle
