#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace accel {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec r(y);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += alpha * x[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec scale(double alpha, const Vec& x) {
  Vec r(x);
  for (double& v : r) v *= alpha;
  return r;
}

// Dense row-major rectangular matrix, only what the certificate engine needs.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major n x n, symmetrized at construction

  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

  static SymmetricMatrix from_dense(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("SymmetricMatrix: not square");
    SymmetricMatrix s(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        s.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
    return s;
  }

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  void symmetrize() {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = 0.5 * (at(i, j) + at(j, i));
        at(i, j) = v;
        at(j, i) = v;
      }
  }

  double frob() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

inline void rank1_update(SymmetricMatrix& s, double w, const Vec& u, const Vec& v) {
  // s += w * sym(u v^T)
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j)
      s.at(i, j) += 0.5 * w * (u[i] * v[j] + v[i] * u[j]);
}

// Cyclic Jacobi sweeps; the matrices here are tiny (dim <= ~30) so simplicity
// wins over anything clever. Off-diagonal driven below 1e-13 * ||A||_F.
inline std::vector<double> eigenvalues_sym(SymmetricMatrix A) {
  for (double v : A.a)
    if (!std::isfinite(v)) throw std::invalid_argument("eigenvalues_sym: non-finite entry");
  const std::size_t n = A.n;
  if (n == 0) return {};
  const double stop = 1e-13 * std::max(A.frob(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * A.at(p, q) * A.at(p, q);
    if (std::sqrt(off) <= stop) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = A.at(p, q);
        if (apq == 0.0) continue;
        double app = A.at(p, p), aqq = A.at(q, q);
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = A.at(k, p), akq = A.at(k, q);
          A.at(k, p) = c * akp - s * akq;
          A.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = A.at(p, k), aqk = A.at(q, k);
          A.at(p, k) = c * apk - s * aqk;
          A.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = A.at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

inline PsdReport is_psd(const SymmetricMatrix& A, double tol = 1e-8) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: negative tolerance");
  auto ev = eigenvalues_sym(A);
  double mn = ev.empty() ? 0.0 : ev.front();
  return {mn >= -tol, mn};
}

struct LsSolution {
  Vec x;
  double residual = 0.0;  // ||Ax - b||
};

// Least squares by normal equations with a tiny diagonal shift. The systems
// solved here are small and well-scaled; rank deficiency shows up in the
// residual rather than as a hard error.
inline LsSolution solve_ls(const Mat& A, const Vec& b) {
  if (A.rows < A.cols) throw std::invalid_argument("solve_ls: underdetermined");
  const std::size_t n = A.cols, m = A.rows;
  Mat M(n, n);
  Vec rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += A.at(k, i) * A.at(k, j);
      M.at(i, j) = s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += A.at(k, i) * b[k];
    rhs[i] = s;
  }
  double diag_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_max = std::max(diag_max, std::abs(M.at(i, i)));
  double reg = 1e-14 * std::max(1.0, diag_max);
  for (std::size_t i = 0; i < n; ++i) M.at(i, i) += reg;

  // Gaussian elimination with partial pivoting on the regularized system.
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(M.at(r, col)) > std::abs(M.at(best, col))) best = r;
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M.at(col, j), M.at(best, j));
      std::swap(rhs[col], rhs[best]);
    }
    double d = M.at(col, col);
    if (d == 0.0) continue;
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = M.at(r, col) / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) M.at(r, j) -= f * M.at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= M.at(i, j) * x[j];
    x[i] = (M.at(i, i) != 0.0) ? s / M.at(i, i) : 0.0;
  }
  double rn = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double s = -b[k];
    for (std::size_t j = 0; j < n; ++j) s += A.at(k, j) * x[j];
    rn += s * s;
  }
  return {x, std::sqrt(rn)};
}

}  // namespace accel
