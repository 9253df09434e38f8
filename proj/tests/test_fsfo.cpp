#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accel/fsfo.hpp"
#include "accel/oracles.hpp"

using namespace accel;

TEST_CASE("method names round-trip") {
  for (Method m : {Method::GD, Method::FGM, Method::OGM, Method::OGM_G,
                   Method::ORC_F_FLAT, Method::OBL_F_FLAT, Method::OBL_G_FLAT,
                   Method::FGM_RC, Method::FGM_RC_SHARP, Method::FGM_BL,
                   Method::ORC_F, Method::OBL_F, Method::OBL_G})
    CHECK(method_from_name(method_name(m)) == m);
  CHECK_THROWS_AS(method_from_name("nope"), std::invalid_argument);
}

TEST_CASE("momentum method single step reduces to a plain gradient step") {
  CoefficientTable tab;
  auto s = build_schedule(Method::FGM, 1, tab);
  REQUIRE(s.h[1].size() == 1);
  CHECK(s.h[1][0] == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("schedule row structure") {
  CoefficientTable tab;
  for (Method m : {Method::GD, Method::FGM, Method::OGM, Method::OGM_G,
                   Method::ORC_F_FLAT, Method::OBL_F_FLAT}) {
    auto s = build_schedule(m, 6, tab);
    REQUIRE(s.h.size() == 7);
    for (std::size_t i = 1; i <= 6; ++i) CHECK(s.h[i].size() == i);
  }
}

TEST_CASE("gradient descent schedule is the identity subdiagonal") {
  CoefficientTable tab;
  auto s = build_schedule(Method::GD, 5, tab);
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t t = 0; t < i; ++t)
      CHECK(s.h[i][t] == Catch::Approx(t + 1 == i ? 1.0 : 0.0).margin(1e-15));
}

TEST_CASE("unrolled gradient-norm schedule matches the explicit formulas") {
  CoefficientTable tab;
  for (std::size_t N : {3u, 4u, 7u, 12u, 25u}) {
    auto a = build_schedule(Method::OBL_G_FLAT, N, tab);
    auto b = obl_g_flat_h_explicit(N);
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t t = 0; t < i; ++t)
        CHECK(a.h[i][t] == Catch::Approx(b.h[i][t]).margin(1e-11));
  }
}

TEST_CASE("horizon validation") {
  CoefficientTable tab;
  CHECK_THROWS_AS(build_schedule(Method::FGM, 0, tab), std::invalid_argument);
  CHECK_THROWS_WITH(build_schedule(Method::OBL_G_FLAT, 2, tab),
                    Catch::Matchers::ContainsSubstring("horizon"));
  CHECK_THROWS_AS(obl_g_flat_h_explicit(2), std::invalid_argument);
  CHECK_THROWS_AS(three_seq_coeffs(Method::FGM_BL, 5, tab), std::invalid_argument);
}

TEST_CASE("run_fsfo fills consistent streams") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  Vec x0(10, 1.0);
  auto tr = run_fsfo(build_schedule(Method::FGM, 20, tab), o, x0);
  REQUIRE(tr.N() == 20);
  CHECK(tr.x.size() == 21);
  CHECK(tr.y.size() == 21);
  CHECK(tr.z.size() == 21);
  CHECK(tr.fx[0] == Catch::Approx(o.f(x0)));
  // descent methods on a well-posed quadratic make progress
  CHECK(tr.fy[20] - o.f_star < (tr.fx[0] - o.f_star) * 1e-2);
  // y/z agree with the recursion: x_k is the stated mix of y_k and z_k
  auto c = three_seq_coeffs(Method::FGM, 20, tab);
  for (std::size_t k = 1; k <= 20; ++k) {
    double m = c.m[k - 1];
    for (std::size_t j = 0; j < 10; ++j)
      CHECK(tr.x[k][j] ==
            Catch::Approx(m * tr.y[k][j] + (1.0 - m) * tr.z[k][j]).margin(1e-10));
  }
}

TEST_CASE("starting at the minimizer keeps every iterate there") {
  CoefficientTable tab;
  auto o = make_problem("quad-2d-coupled");
  for (Method m : {Method::FGM, Method::OGM, Method::ORC_F_FLAT, Method::OBL_F_FLAT}) {
    auto tr = run_fsfo(build_schedule(m, 8, tab), o, o.x_star);
    for (std::size_t k = 0; k <= 8; ++k)
      CHECK(std::sqrt(norm2(sub(tr.x[k], o.x_star))) < 1e-12);
  }
}

TEST_CASE("averaged evaluation point interpolates y and z") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  Vec x0(10, 1.0);
  auto tr = run_fsfo(build_schedule(Method::OBL_F_FLAT, 10, tab), o, x0);
  for (std::size_t k = 1; k <= 10; ++k) {
    Vec xt = obl_f_tilde(tr, k);
    double kd = static_cast<double>(k);
    double s = std::sqrt(kd * (kd + 1.0) / 2.0);
    for (std::size_t j = 0; j < 10; ++j)
      CHECK(xt[j] == Catch::Approx((s * tr.y[k][j] + tr.z[k][j]) / (s + 1.0)));
  }
}
