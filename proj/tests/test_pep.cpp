#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accel/pep.hpp"

using namespace accel;

namespace {
const Method kCertified[] = {Method::FGM, Method::ORC_F_FLAT, Method::OBL_F_FLAT,
                             Method::OBL_G_FLAT};
}

TEST_CASE("multiplier patterns satisfy their linear constraints") {
  CoefficientTable tab;
  for (Method m : kCertified) {
    for (std::size_t N : {3u, 5u, 10u, 20u}) {
      auto c = build_certificate(m, N, 1.0, tab);
      INFO(method_name(m) << " N=" << N);
      CHECK(certificate_constraint_residual(c) <= 1e-12);
    }
  }
}

TEST_CASE("rate constant reproduces the closed form") {
  CoefficientTable tab;
  for (Method m : kCertified)
    for (std::size_t N : {3u, 8u, 15u}) {
      auto c = build_certificate(m, N, 2.5, tab);
      CHECK(c.tau == Catch::Approx(certificate_rate_constant(c, tab)).epsilon(1e-13));
    }
}

TEST_CASE("function-distance S matrices reduce to zero after the pivot step") {
  CoefficientTable tab;
  const double L = 1.7;
  for (Method m : {Method::FGM, Method::ORC_F_FLAT, Method::OBL_F_FLAT}) {
    for (std::size_t N : {1u, 2u, 5u, 12u, 25u}) {
      auto c = build_certificate(m, N, L, tab);
      auto S = assemble_S(c, certificate_schedule(m, N, tab));
      std::size_t p = S.n - 1;
      INFO(method_name(m) << " N=" << N);
      CHECK(S.at(p, p) == Catch::Approx(c.scale / (2.0 * L)).epsilon(1e-12));
      CHECK(schur_reduce(S, p).max_abs() <= 1e-12 * L);
      CHECK(is_psd(S, 1e-10 * L).psd);
    }
  }
}

TEST_CASE("gradient-norm S matrix vanishes identically") {
  CoefficientTable tab;
  for (std::size_t N : {3u, 6u, 14u, 25u}) {
    auto c = build_certificate(Method::OBL_G_FLAT, N, 1.0, tab);
    auto S = assemble_S(c, certificate_schedule(Method::OBL_G_FLAT, N, tab));
    CHECK(S.max_abs() <= 1e-11);
  }
}

TEST_CASE("schedules are recoverable from the certificates") {
  CoefficientTable tab;
  for (Method m : kCertified) {
    for (std::size_t N : {3u, 7u, 18u}) {
      auto c = build_certificate(m, N, 1.0, tab);
      auto rec = recover_h(c);
      auto ref = certificate_schedule(m, N, tab);
      INFO(method_name(m) << " N=" << N);
      for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t t = 0; t < i; ++t)
          CHECK(rec.h[i][t] == Catch::Approx(ref.h[i][t]).margin(1e-10));
    }
  }
}

TEST_CASE("backtracking-family certificate row N targets the averaged point") {
  CoefficientTable tab;
  const std::size_t N = 6;
  auto cs = certificate_schedule(Method::OBL_F_FLAT, N, tab);
  auto ms = build_schedule(Method::OBL_F_FLAT, N, tab);
  for (std::size_t i = 1; i < N; ++i)
    for (std::size_t t = 0; t < i; ++t)
      CHECK(cs.h[i][t] == Catch::Approx(ms.h[i][t]).margin(1e-13));
  double diff = 0.0;
  for (std::size_t t = 0; t < N; ++t) diff += std::abs(cs.h[N][t] - ms.h[N][t]);
  CHECK(diff > 1e-3);  // the terminal row genuinely differs
}

TEST_CASE("KKT multipliers close the duality gap") {
  CoefficientTable tab;
  for (Method m : {Method::FGM, Method::ORC_F_FLAT, Method::OBL_F_FLAT}) {
    for (std::size_t N : {2u, 5u, 12u}) {
      auto c = build_certificate(m, N, 1.0, tab);
      auto kkt = verify_kkt(c, tab);
      INFO(method_name(m) << " N=" << N);
      CHECK(kkt.ok);
      CHECK(kkt.min_eig_K >= -1e-10);
      CHECK(kkt.trace_SK <= 1e-10);
      CHECK(kkt.stationarity <= 1e-10);
      CHECK(kkt.constraint_residual <= 1e-10);
    }
  }
  auto cg = build_certificate(Method::OBL_G_FLAT, 5, 1.0, tab);
  CHECK_THROWS_AS(verify_kkt(cg, tab), std::invalid_argument);
}

TEST_CASE("schur_reduce rejects a nonpositive pivot") {
  SymmetricMatrix S(2);
  S.at(0, 0) = 1.0;
  CHECK_THROWS_AS(schur_reduce(S, 1), std::invalid_argument);
}

TEST_CASE("certificate L scaling") {
  // tau scales linearly in L, the reduced matrix stays at zero
  CoefficientTable tab;
  for (double L : {0.5, 4.0}) {
    auto c = build_certificate(Method::FGM, 8, L, tab);
    auto c1 = build_certificate(Method::FGM, 8, 1.0, tab);
    CHECK(c.tau == Catch::Approx(L * c1.tau).epsilon(1e-13));
    auto S = assemble_S(c, certificate_schedule(Method::FGM, 8, tab));
    CHECK(schur_reduce(S, S.n - 1).max_abs() <= 1e-12 * std::max(1.0, L));
  }
}
