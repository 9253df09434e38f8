#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accel/coeffs.hpp"

using accel::CoefficientTable;

TEST_CASE("theta sequence initial values and recursion") {
  CoefficientTable tab;
  CHECK(tab.theta(0) == 1.0);
  CHECK(tab.theta(1) == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  for (std::size_t k = 0; k < 50; ++k) {
    double t = tab.theta(k);
    CHECK(tab.theta(k + 1) == Catch::Approx((1.0 + std::sqrt(4.0 * t * t + 1.0)) / 2.0));
  }
}

TEST_CASE("theta_tilde values") {
  CoefficientTable tab;
  CHECK_THROWS_AS(tab.theta_tilde(0), std::invalid_argument);
  CHECK(tab.theta_tilde(1) == Catch::Approx(2.0).epsilon(1e-15));
  for (std::size_t k = 1; k < 30; ++k) {
    double t = tab.theta(k - 1);
    CHECK(tab.theta_tilde(k) ==
          Catch::Approx((1.0 + std::sqrt(8.0 * t * t + 1.0)) / 2.0));
  }
}

TEST_CASE("phi sequence initial values and square identity") {
  CoefficientTable tab;
  CHECK(tab.phi(0) == 0.0);
  CHECK(tab.phi(1) == 2.0);
  CHECK(tab.phi(2) == Catch::Approx(3.0 + std::sqrt(3.0)).epsilon(1e-15));
  for (std::size_t k = 0; k < 200; ++k) {
    double d = tab.phi(k + 1) - tab.phi(k);
    CHECK(d * d == Catch::Approx(2.0 * tab.phi(k + 1) - tab.phi(k)).epsilon(1e-12));
  }
}

TEST_CASE("growth lower bounds") {
  CoefficientTable tab;
  for (std::size_t k = 0; k <= 1000; ++k) {
    double kd = static_cast<double>(k);
    CHECK(tab.theta(k) >= (kd + 2.0) / 2.0 - 1e-12);
    CHECK(tab.phi(k + 1) >= (kd + 2.0) * (kd + 2.0) / 4.0 - 1e-9);
  }
}

TEST_CASE("theta^2 / phi ratio is nondecreasing and approaches 1") {
  CoefficientTable tab;
  double prev = 0.0;
  for (std::size_t k = 0; k <= 1000; ++k) {
    double r = tab.theta(k) * tab.theta(k) / tab.phi(k + 1);
    CHECK(r >= prev - 1e-14);
    CHECK(r <= 1.0 + 1e-12);
    prev = r;
  }
  CHECK(tab.theta(1000) * tab.theta(1000) / tab.phi(1001) > 0.98);
}

TEST_CASE("index cap is enforced") {
  CoefficientTable tab;
  CHECK_THROWS_AS(tab.theta(CoefficientTable::kMaxIndex + 1), std::out_of_range);
  CHECK_THROWS_AS(tab.phi(CoefficientTable::kMaxIndex + 1), std::out_of_range);
}
