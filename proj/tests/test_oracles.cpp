#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accel/oracles.hpp"

using namespace accel;

TEST_CASE("quadratic oracle ground truth") {
  SymmetricMatrix A(2);
  A.at(0, 0) = 2.0; A.at(1, 1) = 2.0; A.at(0, 1) = A.at(1, 0) = 1.0;
  auto o = make_quadratic(A, {1.0, 0.0});
  CHECK(o.L == Catch::Approx(3.0).epsilon(1e-12));
  CHECK(o.coordinate_L[0] == Catch::Approx(2.0));
  // minimizer solves A x = b: x = (2/3, -1/3)
  CHECK(o.x_star[0] == Catch::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(o.x_star[1] == Catch::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(o.f_star == Catch::Approx(-1.0 / 3.0).epsilon(1e-9));
  Vec g = o.grad(o.x_star);
  CHECK(std::sqrt(norm2(g)) < 1e-8);
  CHECK(o.f({0.0, 0.0}) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("quadratic rejects indefinite matrices") {
  SymmetricMatrix A(2);
  A.at(0, 0) = 1.0; A.at(1, 1) = -1.0;
  CHECK_THROWS_AS(make_quadratic(A, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("huber oracle") {
  auto o = make_huber(1.0, {0.5, -0.5});
  CHECK(o.L == 1.0);
  CHECK(o.f_star == 0.0);
  CHECK(o.f(o.x_star) == Catch::Approx(0.0));
  // quadratic branch inside delta
  CHECK(o.f({1.0, -0.5}) == Catch::Approx(0.125));
  CHECK(o.grad({1.0, -0.5})[0] == Catch::Approx(0.5));
  // linear branch outside delta: slope is clamped at delta
  CHECK(o.grad({5.0, -0.5})[0] == Catch::Approx(1.0));
  CHECK(o.f({5.0, -0.5}) == Catch::Approx(4.0));
}

TEST_CASE("logsumexp oracle gradient is consistent with finite differences") {
  Mat rows(3, 2);
  rows.at(0, 0) = 1.0; rows.at(0, 1) = 0.0;
  rows.at(1, 0) = 0.0; rows.at(1, 1) = 1.0;
  rows.at(2, 0) = -1.0; rows.at(2, 1) = -1.0;
  auto o = make_logsumexp(rows, 1.0);
  CHECK_FALSE(o.f_star_exact);
  Vec x{0.3, -0.2};
  Vec g = o.grad(x);
  double h = 1e-6;
  for (std::size_t j = 0; j < 2; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h; xm[j] -= h;
    CHECK(g[j] == Catch::Approx((o.f(xp) - o.f(xm)) / (2.0 * h)).margin(1e-6));
  }
}

TEST_CASE("problem registry") {
  for (const auto& id : problem_ids()) {
    auto o = make_problem(id);
    CHECK(o.id == id);
    CHECK(o.dim >= 1);
    CHECK(o.L > 0.0);
    Vec x(o.dim, 0.25);
    CHECK(std::isfinite(o.f(x)));
    CHECK(o.grad(x).size() == o.dim);
  }
  CHECK_THROWS_AS(make_problem("nope"), std::invalid_argument);
}

TEST_CASE("registered L is a valid smoothness bound along a segment") {
  for (const auto& id : problem_ids()) {
    auto o = make_problem(id);
    Vec a(o.dim, 0.9), b(o.dim, -1.1);
    Vec ga = o.grad(a), gb = o.grad(b);
    double gn = std::sqrt(norm2(sub(ga, gb)));
    double dn = std::sqrt(norm2(sub(a, b)));
    CHECK(gn <= o.L * dn * (1.0 + 1e-9));
  }
}
