#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "accel/linalg.hpp"
#include "accel/oracles.hpp"

namespace accel {

enum class IneqKind {
  cocoercivity,
  gradient_step,
  convexity,
  coord_cocoercivity,
  coord_gradient_step,
};

struct InequalityResidual {
  IneqKind kind;
  double value = 0.0;  // LHS - RHS of the named inequality; >= 0 for smooth convex f
  double scale = 1.0;  // tolerance reference: max(1, |f(x)|, |f(y)|, ||g||^2/L)
};

// Residual of the named inequality on (x, y) (and coordinate i for the
// coordinate kinds). L_override substitutes the smoothness modulus, which is
// how line-search acceptance tests reuse these evaluators with estimates L_k.
inline InequalityResidual residual(IneqKind kind, const SmoothOracle& o,
                                   const Vec& x, const Vec& y,
                                   long i = -1, double L_override = 0.0) {
  double L = L_override > 0.0 ? L_override : o.L;
  double fx = o.f(x), fy = o.f(y);
  Vec gx = o.grad(x), gy = o.grad(y);
  double sc = std::max({1.0, std::abs(fx), std::abs(fy), norm2(gx) / L});
  double v = 0.0;
  switch (kind) {
    case IneqKind::convexity:
      v = fx - fy - dot(gy, sub(x, y));
      break;
    case IneqKind::cocoercivity:
      v = fx - fy - dot(gy, sub(x, y)) - norm2(sub(gx, gy)) / (2.0 * L);
      break;
    case IneqKind::gradient_step:
      // evaluated at x with y the (candidate) gradient step
      v = fx - fy - norm2(gx) / (2.0 * L);
      break;
    case IneqKind::coord_cocoercivity: {
      if (i < 0) throw std::invalid_argument("coordinate kind needs index i");
      double Li = L_override > 0.0 ? L_override
                                   : (o.has_coordinate_L()
                                          ? o.coordinate_L[static_cast<std::size_t>(i)]
                                          : throw std::invalid_argument(
                                                "coord_cocoercivity: no coordinate_L"));
      double d = gx[static_cast<std::size_t>(i)] - gy[static_cast<std::size_t>(i)];
      v = fx - fy - dot(gy, sub(x, y)) - d * d / (2.0 * Li);
      break;
    }
    case IneqKind::coord_gradient_step: {
      if (i < 0) throw std::invalid_argument("coordinate kind needs index i");
      double Li = L_override > 0.0 ? L_override
                                   : (o.has_coordinate_L()
                                          ? o.coordinate_L[static_cast<std::size_t>(i)]
                                          : throw std::invalid_argument(
                                                "coord_gradient_step: no coordinate_L"));
      double gi = gx[static_cast<std::size_t>(i)];
      v = fx - fy - gi * gi / (2.0 * Li);
      break;
    }
  }
  return {kind, v, sc};
}

struct InterpolationReport {
  bool interpolable = true;
  double worst = 0.0;   // most negative pair residual (0 when none)
  std::size_t worst_i = 0, worst_j = 0;
};

// Smooth convex interpolation test over all ordered pairs of (x, g, f)
// triplets: f_i - f_j - <g_j, x_i - x_j> >= ||g_i - g_j||^2 / (2L).
inline InterpolationReport check_interpolable(
    const std::vector<Vec>& xs, const std::vector<Vec>& gs,
    const std::vector<double>& fs, double L) {
  InterpolationReport rep;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double sc = std::max({1.0, std::abs(fs[i]), std::abs(fs[j]), norm2(gs[j]) / L});
      double v = fs[i] - fs[j] - dot(gs[j], sub(xs[i], xs[j])) -
                 norm2(sub(gs[i], gs[j])) / (2.0 * L);
      if (v < -1e-9 * sc) rep.interpolable = false;
      if (v < rep.worst) { rep.worst = v; rep.worst_i = i; rep.worst_j = j; }
    }
  }
  return rep;
}

}  // namespace accel
