#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "accel/linalg.hpp"

namespace accel {

// Zero/first-order oracle for an L-smooth convex test function, with whatever
// ground truth is available (minimizer, optimal value, coordinate moduli).
struct SmoothOracle {
  std::string id;
  std::size_t dim = 0;
  double L = 0.0;
  Vec coordinate_L;      // empty when coordinate moduli are not registered
  Vec x_star;            // empty when unknown
  double f_star = 0.0;
  bool f_star_exact = true;  // false: estimated by a long gradient run

  std::function<double(const Vec&)> f;
  std::function<Vec(const Vec&)> grad;

  bool has_x_star() const { return !x_star.empty(); }
  bool has_coordinate_L() const { return !coordinate_L.empty(); }
  double grad_i(const Vec& x, std::size_t i) const { return grad(x)[i]; }
};

// f(x) = 1/2 x^T A x - b^T x. L = lambda_max(A), coordinate moduli from the
// diagonal, minimizer from the (regularized) normal-equation solve.
inline SmoothOracle make_quadratic(const SymmetricMatrix& A, const Vec& b,
                                   std::string id = "quadratic") {
  const std::size_t n = A.n;
  if (b.size() != n) throw std::invalid_argument("make_quadratic: dim mismatch");
  auto ev = eigenvalues_sym(A);
  double scale_ref = std::max(1.0, std::abs(ev.back()));
  if (ev.front() < -1e-10 * scale_ref)
    throw std::invalid_argument("make_quadratic: matrix not PSD");

  Mat Am(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Am.at(i, j) = A.at(i, j);
  auto ls = solve_ls(Am, b);

  SmoothOracle o;
  o.id = std::move(id);
  o.dim = n;
  o.L = std::max(ev.back(), 0.0);
  o.coordinate_L.resize(n);
  for (std::size_t i = 0; i < n; ++i) o.coordinate_L[i] = A.at(i, i);
  o.x_star = ls.x;
  auto Ap = std::make_shared<SymmetricMatrix>(A);
  auto bp = std::make_shared<Vec>(b);
  o.f = [Ap, bp, n](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += Ap->at(i, j) * x[j];
      s += 0.5 * x[i] * r - (*bp)[i] * x[i];
    }
    return s;
  };
  o.grad = [Ap, bp, n](const Vec& x) {
    Vec g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += Ap->at(i, j) * x[j];
      g[i] = r - (*bp)[i];
    }
    return g;
  };
  o.f_star = o.f(o.x_star);
  return o;
}

// f(x) = scale * log sum exp(a_i^T x / scale). Registered L is the upper bound
// sigma_max(A)^2 / scale; f_star comes from a long gradient run and is
// flagged as an estimate.
inline SmoothOracle make_logsumexp(const Mat& rows, double scale,
                                   std::string id = "logsumexp") {
  if (scale <= 0.0) throw std::invalid_argument("make_logsumexp: scale <= 0");
  if (rows.rows == 0) throw std::invalid_argument("make_logsumexp: empty rows");
  const std::size_t m = rows.rows, n = rows.cols;

  SymmetricMatrix AtA(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += rows.at(k, i) * rows.at(k, j);
      AtA.at(i, j) = s;
    }
  double sigma_sq = std::max(eigenvalues_sym(AtA).back(), 0.0);

  SmoothOracle o;
  o.id = std::move(id);
  o.dim = n;
  o.L = std::max(sigma_sq / scale, 1e-12);
  auto Ap = std::make_shared<Mat>(rows);
  o.f = [Ap, scale, m, n](const Vec& x) {
    double mx = -1e300;
    std::vector<double> t(m);
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += Ap->at(k, j) * x[j];
      t[k] = s / scale;
      mx = std::max(mx, t[k]);
    }
    double acc = 0.0;
    for (double v : t) acc += std::exp(v - mx);
    return scale * (mx + std::log(acc));
  };
  o.grad = [Ap, scale, m, n](const Vec& x) {
    double mx = -1e300;
    std::vector<double> t(m);
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += Ap->at(k, j) * x[j];
      t[k] = s / scale;
      mx = std::max(mx, t[k]);
    }
    double z = 0.0;
    for (double& v : t) { v = std::exp(v - mx); z += v; }
    Vec g(n, 0.0);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < n; ++j) g[j] += (t[k] / z) * Ap->at(k, j);
    return g;
  };
  // estimate f_star: plain gradient descent, plenty of iterations at desk scale
  Vec x(n, 0.0);
  for (int it = 0; it < 200000; ++it) {
    Vec g = o.grad(x);
    for (std::size_t j = 0; j < n; ++j) x[j] -= g[j] / o.L;
  }
  o.f_star = o.f(x);
  o.f_star_exact = false;
  return o;
}

// Coordinate-separable Huber loss about `center`; curvature of the quadratic
// branch is 1, so L = 1 exactly and the function is not strongly convex.
inline SmoothOracle make_huber(double delta, const Vec& center,
                               std::string id = "huber") {
  if (delta <= 0.0) throw std::invalid_argument("make_huber: delta <= 0");
  const std::size_t n = center.size();
  SmoothOracle o;
  o.id = std::move(id);
  o.dim = n;
  o.L = 1.0;
  o.coordinate_L.assign(n, 1.0);
  o.x_star = center;
  o.f_star = 0.0;
  auto cp = std::make_shared<Vec>(center);
  o.f = [cp, delta, n](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = x[i] - (*cp)[i];
      s += std::abs(t) <= delta ? 0.5 * t * t : delta * (std::abs(t) - 0.5 * delta);
    }
    return s;
  };
  o.grad = [cp, delta, n](const Vec& x) {
    Vec g(n);
    for (std::size_t i = 0; i < n; ++i) {
      double t = x[i] - (*cp)[i];
      g[i] = std::abs(t) <= delta ? t : delta * (t > 0 ? 1.0 : -1.0);
    }
    return g;
  };
  return o;
}

// ---- problem registry (CLI addressable) ----

inline SmoothOracle make_problem(const std::string& id) {
  if (id == "quad-1d") {
    SymmetricMatrix A(1);
    A.at(0, 0) = 4.0;
    return make_quadratic(A, {0.0}, id);
  }
  if (id == "quad-diag-10") {
    SymmetricMatrix A(10);
    Vec b(10);
    for (std::size_t i = 0; i < 10; ++i) {
      A.at(i, i) = 1.0 + static_cast<double>(i);
      b[i] = A.at(i, i) * (i % 2 ? -0.5 : 0.7);  // minimizer alternates signs
    }
    return make_quadratic(A, b, id);
  }
  if (id == "quad-2d-coupled") {
    SymmetricMatrix A(2);
    A.at(0, 0) = 2.0; A.at(1, 1) = 2.0; A.at(0, 1) = A.at(1, 0) = 1.0;
    return make_quadratic(A, {1.0, 0.0}, id);
  }
  if (id == "huber-1d") return make_huber(1.0, {0.0}, id);
  if (id == "huber-4d") return make_huber(1.0, {0.3, -0.2, 0.0, 1.1}, id);
  if (id == "lse-2") {
    Mat rows(8, 2);
    // fixed deterministic rows; values chosen once, no runtime randomness
    const double vals[16] = {0.62, -1.3, 1.1, 0.44, -0.95, 0.8, 0.3, -0.7,
                             -1.2, -0.15, 0.55, 1.4, -0.33, 0.9, 1.05, -0.6};
    for (std::size_t k = 0; k < 8; ++k)
      for (std::size_t j = 0; j < 2; ++j) rows.at(k, j) = vals[2 * k + j];
    return make_logsumexp(rows, 1.0, id);
  }
  throw std::invalid_argument("unknown problem id: " + id);
}

inline std::vector<std::string> problem_ids() {
  return {"quad-1d", "quad-diag-10", "quad-2d-coupled", "huber-1d", "huber-4d", "lse-2"};
}

}  // namespace accel
