#pragma once

#include <cmath>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace accel {

// Memoized scalar sequences driving every step-size schedule and certificate:
//   theta[0] = 1,            theta[k+1] = (1 + sqrt(4 theta[k]^2 + 1)) / 2
//   theta_tilde[k] = (1 + sqrt(8 theta[k-1]^2 + 1)) / 2   (k >= 1)
//   phi[0] = 0, phi[1] = 2,  phi[k+1] = phi[k] + 1 + sqrt(1 + phi[k])
// The phi update is the positive root of (phi[k+1]-phi[k])^2 = 2 phi[k+1]-phi[k],
// so the recurrence is branch-free and monotone.
class CoefficientTable {
public:
  // memory cap; queries above this are a programming error, not a use case
  static constexpr std::size_t kMaxIndex = 10'000'000;

  double theta(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend_theta(k);
    return theta_[k];
  }

  double theta_tilde(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("theta_tilde: defined for k >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    extend_theta(k - 1);
    double t = theta_[k - 1];
    return (1.0 + std::sqrt(8.0 * t * t + 1.0)) / 2.0;
  }

  double phi(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend_phi(k);
    return phi_[k];
  }

private:
  void check_index(std::size_t k) const {
    if (k > kMaxIndex) throw std::out_of_range("CoefficientTable: index above cap");
  }

  void extend_theta(std::size_t k) const {
    check_index(k);
    if (theta_.empty()) theta_.push_back(1.0);
    if (k < theta_.size()) return;
    theta_.reserve(std::max(theta_.size() * 2, k + 1));
    while (theta_.size() <= k) {
      double t = theta_.back();
      theta_.push_back((1.0 + std::sqrt(4.0 * t * t + 1.0)) / 2.0);
    }
  }

  void extend_phi(std::size_t k) const {
    check_index(k);
    if (phi_.empty()) { phi_.push_back(0.0); phi_.push_back(2.0); }
    if (k < phi_.size()) return;
    phi_.reserve(std::max(phi_.size() * 2, k + 1));
    while (phi_.size() <= k) {
      double p = phi_.back();
      phi_.push_back(p + 1.0 + std::sqrt(1.0 + p));
    }
  }

  mutable std::mutex mu_;
  mutable std::vector<double> theta_;
  mutable std::vector<double> phi_;
};

}  // namespace accel
