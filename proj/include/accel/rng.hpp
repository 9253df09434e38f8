#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace accel {

// Splitmix-style 64-bit generator: tiny, fully specified, identical draws on
// every platform. Good enough statistical quality for coordinate sampling.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() {  // [0, 1) with 53 random bits
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

// Inverse-CDF sampling over p_i = sqrt(L_i) / S; ties break toward the lower
// index so draws are deterministic given the seed.
struct CoordinateSampler {
  std::vector<double> p, cdf;
  double S = 0.0;

  explicit CoordinateSampler(const std::vector<double>& coordinate_L) {
    if (coordinate_L.empty())
      throw std::invalid_argument("CoordinateSampler: empty coordinate_L");
    for (double Li : coordinate_L) S += std::sqrt(Li);
    double acc = 0.0;
    for (double Li : coordinate_L) {
      p.push_back(std::sqrt(Li) / S);
      acc += p.back();
      cdf.push_back(acc);
    }
    cdf.back() = 1.0;
  }

  std::size_t sample(SplitMix64& rng) const {
    double u = rng.uniform01();
    for (std::size_t i = 0; i < cdf.size(); ++i)
      if (u < cdf[i] || i + 1 == cdf.size()) return i;
    return cdf.size() - 1;
  }
};

}  // namespace accel
