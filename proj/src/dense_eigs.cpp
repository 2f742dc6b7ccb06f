#include "saddle/dense_eigs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "saddle/errors.hpp"

namespace saddle {

namespace {

constexpr std::size_t kMaxOrder = 600;

void require_square(const DenseMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": matrix must be square");
}

// Diagonal similarity scaling by powers of two so that row and column norms
// are comparable (no permutations).
void balance(DenseMatrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        again = true;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (similarity, in place).
void hessenberg(DenseMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;
    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      sigma += v[i] * v[i];
    }
    double alpha = -std::copysign(std::sqrt(sigma), v[k + 1]);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // Left: rows k+1.. of A -= (2/|v|^2) v (v^T A)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // Right: columns k+1.. of A -= (2/|v|^2) (A v) v^T
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr,
// low = 1, igh = n). Indices below are 1-based to follow the original.
std::vector<Complex> hqr(DenseMatrix& hm) {
  const int n = static_cast<int>(hm.rows());
  auto h = [&](int i, int j) -> double& { return hm(i - 1, j - 1); };
  std::vector<double> wr(n + 1, 0.0), wi(n + 1, 0.0);

  double norm = 0.0;
  int k = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = k; j <= n; ++j) norm += std::abs(h(i, j));
    k = i;
  }

  int en = n;
  double t = 0.0;
  int itn = 100 * n;
  double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, zz = 0;
  int l = 1, m = 1;

  while (en >= 1) {
    int its = 0;
    int na = en - 1;
    int enm2 = na - 1;
    for (;;) {
      // Look for a single small subdiagonal element.
      for (l = en; l > 1; --l) {
        s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = norm;
        double tst1 = s;
        double tst2 = tst1 + std::abs(h(l, l - 1));
        if (tst2 == tst1) break;
      }
      x = h(en, en);
      if (l == en) {
        wr[en] = x + t;
        wi[en] = 0.0;
        en = na;
        break;
      }
      y = h(na, na);
      w = h(en, na) * h(na, en);
      if (l == na) {
        p = (y - x) / 2.0;
        q = p * p + w;
        zz = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          zz = p + sign_of(zz, p);
          wr[na] = x + zz;
          wr[en] = zz != 0.0 ? x - w / zz : wr[na];
          wi[na] = 0.0;
          wi[en] = 0.0;
        } else {
          wr[na] = x + p;
          wr[en] = x + p;
          wi[na] = zz;
          wi[en] = -zz;
        }
        en = enm2;
        break;
      }
      if (itn == 0) {
        throw ConvergenceError("dense_eigs: QR iteration did not converge (eigenvalue " +
                               std::to_string(en) + ")");
      }
      if (its == 10 || its == 20) {
        // Exceptional shift.
        t += x;
        for (int i = 1; i <= en; ++i) h(i, i) -= x;
        s = std::abs(h(en, na)) + std::abs(h(na, enm2));
        x = 0.75 * s;
        y = x;
        w = -0.4375 * s * s;
      }
      ++its;
      --itn;
      // Look for two consecutive small subdiagonal elements.
      for (m = enm2; m >= l; --m) {
        zz = h(m, m);
        r = x - zz;
        s = y - zz;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - zz - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        double tst1 = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) +
                                     std::abs(h(m + 1, m + 1)));
        double tst2 = tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
        if (tst2 == tst1) break;
      }
      const int mp2 = m + 2;
      for (int i = mp2; i <= en; ++i) {
        h(i, i - 2) = 0.0;
        if (i != mp2) h(i, i - 3) = 0.0;
      }
      // Double QR step on rows l..en and columns m..en.
      for (k = m; k <= na; ++k) {
        const bool notlas = k != na;
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlas ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (k != m) {
          h(k, k - 1) = -s * x;
        } else if (l != m) {
          h(k, k - 1) = -h(k, k - 1);
        }
        p += s;
        x = p / s;
        y = q / s;
        zz = r / s;
        q /= p;
        r /= p;
        const int jmax = std::min(en, k + 3);
        if (!notlas) {
          for (int j = k; j <= n; ++j) {
            p = h(k, j) + q * h(k + 1, j);
            h(k, j) -= p * x;
            h(k + 1, j) -= p * y;
          }
          for (int i = 1; i <= jmax; ++i) {
            p = x * h(i, k) + y * h(i, k + 1);
            h(i, k) -= p;
            h(i, k + 1) -= p * q;
          }
        } else {
          for (int j = k; j <= n; ++j) {
            p = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
            h(k, j) -= p * x;
            h(k + 1, j) -= p * y;
            h(k + 2, j) -= p * zz;
          }
          for (int i = 1; i <= jmax; ++i) {
            p = x * h(i, k) + y * h(i, k + 1) + zz * h(i, k + 2);
            h(i, k) -= p;
            h(i, k + 1) -= p * q;
            h(i, k + 2) -= p * r;
          }
        }
      }
    }
  }

  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

std::vector<Complex> eigenvalues(const DenseMatrix& a) {
  require_square(a, "eigenvalues");
  if (a.rows() == 0) return {};
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("eigenvalues: matrix has non-finite entries");
  }
  DenseMatrix h = a;
  balance(h);
  hessenberg(h);
  return hqr(h);
}

EigenReport dense_eigs(const DenseMatrix& a, double tol) {
  require_square(a, "dense_eigs");
  if (a.rows() > kMaxOrder) {
    throw DimensionError("dense_eigs: order " + std::to_string(a.rows()) + " exceeds " +
                         std::to_string(kMaxOrder));
  }
  EigenReport rep;
  rep.tol = tol;
  rep.eigenvalues = eigenvalues(a);
  for (const Complex& lam : rep.eigenvalues) {
    if (std::abs(lam - 1.0) <= tol) ++rep.unit_eigenvalue_count;
  }
  return rep;
}

std::vector<Complex> inverse_iteration(const DenseMatrix& a, Complex lambda, int sweeps) {
  require_square(a, "inverse_iteration");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  double anorm = 0.0;
  for (double v : a.data()) anorm = std::max(anorm, std::abs(v));
  anorm = std::max(anorm, 1.0);
  const double eps = 1e-14 * anorm;
  // Shift slightly off the estimate so the factorization is not exactly singular.
  const Complex shift = lambda + Complex(eps, eps);

  std::vector<Complex> lu(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = a(i, j);
    lu[i * n + i] -= shift;
  }
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu[i * n + k]) > std::abs(lu[best * n + k])) best = i;
    }
    piv[k] = best;
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[best * n + j]);
    }
    if (std::abs(lu[k * n + k]) < eps) lu[k * n + k] = eps;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = lu[i * n + k] / lu[k * n + k];
      lu[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
    }
  }

  std::vector<Complex> v(n, Complex(1.0, 0.0));
  for (int sweep = 0; sweep < std::max(sweeps, 1); ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      if (piv[k] != k) std::swap(v[k], v[piv[k]]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) v[i] -= lu[i * n + j] * v[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) v[i] -= lu[i * n + j] * v[j];
      v[i] /= lu[i * n + i];
    }
    double nv = 0.0;
    for (const Complex& c : v) nv += std::norm(c);
    nv = std::sqrt(nv);
    for (Complex& c : v) c /= nv;
  }
  return v;
}

DenseMatrix null_space(const DenseMatrix& a, double rel_tol) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  DenseMatrix r = a;
  double amax = 0.0;
  for (double v : r.data()) amax = std::max(amax, std::abs(v));
  const double thresh = rel_tol * (amax > 0.0 ? amax : 1.0);

  // Reduced row echelon form with partial pivoting.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < rows; ++i) {
      if (std::abs(r(i, c)) > std::abs(r(best, c))) best = i;
    }
    if (std::abs(r(best, c)) <= thresh) continue;
    if (best != row) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(r(row, j), r(best, j));
    }
    double d = r(row, c);
    for (std::size_t j = 0; j < cols; ++j) r(row, j) /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || r(i, c) == 0.0) continue;
      double f = r(i, c);
      for (std::size_t j = 0; j < cols; ++j) r(i, j) -= f * r(row, j);
    }
    pivot_cols.push_back(c);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<double>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<double> v(cols, 0.0);
    v[f] = 1.0;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -r(k, f);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) axpy(-dot(q, v), q, v);
    }
    double nv = norm2(v);
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }

  DenseMatrix out(cols, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < cols; ++i) out(i, j) = basis[j][i];
  }
  return out;
}

}  // namespace saddle
