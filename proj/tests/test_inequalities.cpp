#include <catch2/catch_amalgamated.hpp>

#include "accel/inequalities.hpp"
#include "accel/oracles.hpp"

using namespace accel;

namespace {
SmoothOracle coupled() { return make_problem("quad-2d-coupled"); }
}

TEST_CASE("convexity and cocoercivity residuals are nonnegative on convex f") {
  auto o = coupled();
  Vec x{1.0, -2.0}, y{-0.5, 0.7};
  for (auto kind : {IneqKind::convexity, IneqKind::cocoercivity}) {
    auto r = residual(kind, o, x, y);
    CHECK(r.value >= -1e-12 * r.scale);
  }
}

TEST_CASE("gradient step residual sign flips when L is understated") {
  auto o = coupled();
  Vec x{2.0, 1.0};
  Vec y = axpy(-1.0 / o.L, o.grad(x), x);
  CHECK(residual(IneqKind::gradient_step, o, x, y).value >= -1e-12);
  // understated modulus moves y too far and breaks the decrease condition
  double Lsmall = o.L / 50.0;
  Vec yfar = axpy(-1.0 / Lsmall, o.grad(x), x);
  CHECK(residual(IneqKind::gradient_step, o, x, yfar, -1, Lsmall).value < 0.0);
}

TEST_CASE("coordinate kinds need an index and coordinate moduli") {
  auto o = coupled();
  Vec x{1.0, 0.0}, y{0.0, 1.0};
  CHECK_THROWS_AS(residual(IneqKind::coord_cocoercivity, o, x, y), std::invalid_argument);
  auto r = residual(IneqKind::coord_cocoercivity, o, x, y, 0);
  CHECK(r.value >= -1e-12 * r.scale);
  auto h = make_problem("lse-2");  // no coordinate_L registered
  Vec a(2, 0.5), b(2, -0.5);
  CHECK_THROWS_AS(residual(IneqKind::coord_gradient_step, h, a, b, 0), std::invalid_argument);
}

TEST_CASE("coordinate gradient step holds for the diagonal modulus") {
  auto o = make_problem("quad-diag-10");
  Vec x(10, 1.0);
  for (std::size_t i = 0; i < o.dim; ++i) {
    Vec y = x;
    y[i] -= o.grad(x)[i] / o.coordinate_L[i];
    auto r = residual(IneqKind::coord_gradient_step, o, x, y, static_cast<long>(i));
    CHECK(r.value >= -1e-12 * r.scale);
  }
}

TEST_CASE("interpolation check accepts triplets from a smooth convex function") {
  auto o = make_problem("quad-diag-10");
  std::vector<Vec> xs, gs;
  std::vector<double> fs;
  for (int t = 0; t < 6; ++t) {
    Vec x(10);
    for (std::size_t j = 0; j < 10; ++j)
      x[j] = 0.3 * static_cast<double>(t) - 0.1 * static_cast<double>(j);
    xs.push_back(x);
    gs.push_back(o.grad(x));
    fs.push_back(o.f(x));
  }
  auto rep = check_interpolable(xs, gs, fs, o.L);
  CHECK(rep.interpolable);
}

TEST_CASE("interpolation check rejects an understated modulus") {
  auto o = make_problem("quad-1d");  // curvature 4
  std::vector<Vec> xs{{0.0}, {1.0}};
  std::vector<Vec> gs{o.grad({0.0}), o.grad({1.0})};
  std::vector<double> fs{o.f({0.0}), o.f({1.0})};
  auto rep = check_interpolable(xs, gs, fs, 1.0);
  CHECK_FALSE(rep.interpolable);
  CHECK(rep.worst < 0.0);
}
