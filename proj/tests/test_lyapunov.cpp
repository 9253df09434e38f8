#include <catch2/catch_amalgamated.hpp>

#include "accel/adaptive.hpp"
#include "accel/lyapunov.hpp"
#include "accel/oracles.hpp"

using namespace accel;

namespace {

Vec start(const SmoothOracle& o) {
  Vec x(o.dim, 1.0);
  if (o.has_x_star())
    for (std::size_t i = 0; i < o.dim; ++i) x[i] = o.x_star[i] + 1.0;
  return x;
}

}  // namespace

TEST_CASE("fixed-step decrement identities hold to machine precision") {
  CoefficientTable tab;
  for (const char* pid : {"quad-1d", "quad-diag-10", "quad-2d-coupled", "huber-4d"}) {
    auto o = make_problem(pid);
    for (Method m : {Method::FGM, Method::OGM, Method::ORC_F_FLAT, Method::OBL_F_FLAT}) {
      auto tr = run_fsfo(build_schedule(m, 25, tab), o, start(o));
      auto rep = verify_decrement(tr, tab, o);
      INFO(method_name(m) << " on " << pid);
      CHECK(rep.ok);
      CHECK(rep.worst_identity <= 1e-10);
      CHECK(rep.worst_decrement >= -1e-10);
    }
  }
}

TEST_CASE("gradient-norm schedule: interior identity, one-sided boundaries") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  auto tr = run_fsfo(build_schedule(Method::OBL_G_FLAT, 15, tab), o, start(o));
  auto rep = verify_decrement(tr, tab, o);
  CHECK(rep.ok);
  CHECK(rep.worst_identity <= 1e-10);
  REQUIRE(rep.steps.size() == 15);
  CHECK_FALSE(rep.steps.front().identity_checked);
  CHECK_FALSE(rep.steps.back().identity_checked);
  for (std::size_t k = 1; k + 1 < 15; ++k) CHECK(rep.steps[k].identity_checked);
}

TEST_CASE("coordinate method conditional decrements over all realizations") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  for (bool sharp : {true}) {
    auto tr = run_fgm_rc(o, start(o), 30, 11, sharp);
    auto rep = verify_decrement(tr, tab, o);
    CHECK(rep.ok);
    CHECK(rep.worst_identity <= 1e-9);
  }
  auto tr = run_orc_f(o, start(o), 30, 11);
  auto rep = verify_decrement(tr, tab, o);
  CHECK(rep.ok);
  CHECK(rep.worst_identity <= 1e-9);
}

TEST_CASE("backtracking variants verify on a problem that forces jumps") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  auto bl = run_fgm_bl(o, start(o), 25, o.L / 10.0, 2.0);
  REQUIRE_FALSE(bl.jumps.empty());
  auto rep = verify_decrement(bl, tab, o);
  CHECK(rep.ok);
  CHECK(rep.worst_identity <= 1e-10);

  auto of = run_obl_f(o, start(o), 25, o.L / 10.0, 2.0);
  auto rof = verify_decrement(of, tab, o);
  CHECK(rof.ok);
  CHECK(rof.worst_identity <= 1e-10);

  auto og = run_obl_g(o, start(o), 25, o.L / 4.0, 2.0);
  auto rog = verify_decrement(og, tab, o);
  CHECK(rog.ok);
}

TEST_CASE("unsupported methods are rejected rather than silently skipped") {
  CoefficientTable tab;
  auto o = make_problem("quad-1d");
  auto tr = run_fsfo(build_schedule(Method::GD, 5, tab), o, {2.0});
  CHECK_THROWS_AS(verify_decrement(tr, tab, o), std::invalid_argument);
  auto tg = run_fsfo(build_schedule(Method::OGM_G, 5, tab), o, {2.0});
  CHECK_THROWS_AS(verify_decrement(tg, tab, o), std::invalid_argument);
}

TEST_CASE("rate bounds hold for every fixed-step method") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  for (Method m : {Method::GD, Method::FGM, Method::OGM, Method::ORC_F_FLAT,
                   Method::OBL_F_FLAT}) {
    auto tr = run_fsfo(build_schedule(m, 30, tab), o, start(o));
    auto rep = verify_rate(tr, tab, o);
    INFO(method_name(m));
    CHECK(rep.ok);
    CHECK_FALSE(rep.expectation_only);
  }
  for (Method m : {Method::OGM_G, Method::OBL_G_FLAT}) {
    auto tr = run_fsfo(build_schedule(m, 30, tab), o, start(o));
    CHECK(verify_rate(tr, tab, o).ok);
  }
}

TEST_CASE("adaptive endpoint bounds hold with aggressive initial estimates") {
  CoefficientTable tab;
  for (const char* pid : {"quad-diag-10", "lse-2", "huber-4d"}) {
    auto o = make_problem(pid);
    if (!o.has_x_star()) continue;
    auto of = run_obl_f(o, start(o), 30, o.L / 10.0, 2.0);
    CHECK(verify_rate(of, tab, o).ok);
    auto bl = run_fgm_bl(o, start(o), 30, o.L / 10.0, 2.0);
    CHECK(verify_rate(bl, tab, o).ok);
  }
  auto o = make_problem("quad-diag-10");
  auto og = run_obl_g(o, start(o), 30, o.L / 4.0, 2.0);
  CHECK(verify_rate(og, tab, o).ok);
}

TEST_CASE("randomized rate reports are flagged expectation-only") {
  CoefficientTable tab;
  auto o = make_problem("quad-diag-10");
  auto tr = run_fgm_rc(o, start(o), 20, 0, false);
  auto rep = verify_rate(tr, tab, o);
  CHECK(rep.expectation_only);
  CHECK(rep.ok);
}
