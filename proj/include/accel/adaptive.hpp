#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "accel/coeffs.hpp"
#include "accel/fsfo.hpp"
#include "accel/inequalities.hpp"
#include "accel/oracles.hpp"
#include "accel/rng.hpp"

namespace accel {

// Methods with runtime-dependent steps: randomized coordinate updates and
// backtracking line searches. All share the Trajectory record of fsfo.hpp.

namespace detail {

constexpr int kMaxBacktracks = 200;
constexpr double kSearchSlack = 1e-12;  // relative acceptance slack

inline bool search_ok(const InequalityResidual& r) {
  return r.value >= -kSearchSlack * r.scale;
}

}  // namespace detail

// Coordinate-update family. `zcoef(k)` is the z-step numerator (before the
// 1/(S sqrt(L_i)) scaling), `ymix(k)` the weight on y_{k+1} in the x-mix.
template <class ZCoef, class YMix>
inline Trajectory run_coordinate_method(Method method, const SmoothOracle& o,
                                        const Vec& x0, std::size_t N,
                                        std::uint64_t seed, ZCoef zcoef, YMix ymix) {
  if (!o.has_coordinate_L())
    throw std::invalid_argument(method_name(method) + ": oracle lacks coordinate_L");
  if (x0.size() != o.dim) throw std::invalid_argument("dim mismatch");
  CoordinateSampler sampler(o.coordinate_L);
  SplitMix64 rng(seed);

  Trajectory tr;
  tr.method = method;
  tr.oracle_id = o.id;
  tr.seed = seed;
  tr.S = sampler.S;
  Vec x = x0, y = x0, z = x0;
  tr.x.push_back(x); tr.y.push_back(y); tr.z.push_back(z);
  tr.g.push_back(o.grad(x));
  tr.fx.push_back(o.f(x)); tr.fy.push_back(tr.fx[0]);
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t i = sampler.sample(rng);
    tr.coord.push_back(i);
    double gi = o.grad(x)[i];
    double Li = o.coordinate_L[i];
    Vec y1 = x, z1 = z;
    y1[i] -= gi / Li;
    z1[i] -= zcoef(k) / (sampler.S * std::sqrt(Li)) * gi;
    double m = ymix(k);
    Vec x1(o.dim);
    for (std::size_t j = 0; j < o.dim; ++j) x1[j] = m * y1[j] + (1.0 - m) * z1[j];
    detail::check_finite(x1, "coordinate method");
    x = x1; y = y1; z = z1;
    tr.x.push_back(x); tr.y.push_back(y); tr.z.push_back(z);
    tr.g.push_back(o.grad(x));
    tr.fx.push_back(o.f(x)); tr.fy.push_back(o.f(y));
  }
  return tr;
}

inline Trajectory run_fgm_rc(const SmoothOracle& o, const Vec& x0, std::size_t N,
                             std::uint64_t seed, bool sharp) {
  CoefficientTable tab;
  if (sharp)
    return run_coordinate_method(
        Method::FGM_RC_SHARP, o, x0, N, seed,
        [&tab](std::size_t k) { return tab.theta(k); },
        [&tab](std::size_t k) { return 1.0 - 1.0 / tab.theta(k + 1); });
  return run_coordinate_method(
      Method::FGM_RC, o, x0, N, seed,
      [](std::size_t k) { return (static_cast<double>(k) + 2.0) / 2.0; },
      [](std::size_t k) {
        return (static_cast<double>(k) + 1.0) / (static_cast<double>(k) + 3.0);
      });
}

inline Trajectory run_orc_f(const SmoothOracle& o, const Vec& x0, std::size_t N,
                            std::uint64_t seed) {
  CoefficientTable tab;
  return run_coordinate_method(
      Method::ORC_F, o, x0, N, seed,
      [&tab](std::size_t k) { return tab.phi(k + 1) - tab.phi(k); },
      [&tab](std::size_t k) { return tab.phi(k + 1) / tab.phi(k + 2); });
}

// FGM with a backtracked smoothness estimate: sufficient decrease of the
// plain gradient step decides acceptance.
inline Trajectory run_fgm_bl(const SmoothOracle& o, const Vec& x0, std::size_t N,
                             double L0, double eta) {
  if (L0 <= 0.0 || eta <= 1.0) throw std::invalid_argument("run_fgm_bl: bad search params");
  CoefficientTable tab;
  Trajectory tr;
  tr.method = Method::FGM_BL;
  tr.oracle_id = o.id;
  tr.L0 = L0;
  Vec x = x0, y = x0, z = x0;
  tr.x.push_back(x); tr.y.push_back(y); tr.z.push_back(z);
  tr.g.push_back(o.grad(x)); tr.fx.push_back(o.f(x)); tr.fy.push_back(tr.fx[0]);
  double Lk = L0;
  for (std::size_t k = 0; k < N; ++k) {
    Vec gx = o.grad(x);
    double Lbar = Lk;
    int tries = 0;
    while (true) {
      Vec ycand = axpy(-1.0 / Lbar, gx, x);
      if (detail::search_ok(residual(IneqKind::gradient_step, o, x, ycand, -1, Lbar))) break;
      Lbar *= eta;
      if (++tries > detail::kMaxBacktracks)
        throw std::runtime_error("run_fgm_bl: backtracking did not terminate");
      ++tr.backtracks;
    }
    if (Lbar > Lk) { tr.jumps.push_back(k); tr.jump_flag.push_back(1); }
    else tr.jump_flag.push_back(0);
    Vec y1 = axpy(-1.0 / Lbar, gx, x);
    Vec z1 = axpy(-tab.theta(k) / Lbar, gx, z);
    double m = 1.0 - 1.0 / tab.theta(k + 1);
    Vec x1(o.dim);
    for (std::size_t j = 0; j < o.dim; ++j) x1[j] = m * y1[j] + (1.0 - m) * z1[j];
    x = x1; y = y1; z = z1; Lk = Lbar;
    tr.Lk.push_back(Lbar);
    tr.x.push_back(x); tr.y.push_back(y); tr.z.push_back(z);
    tr.g.push_back(o.grad(x)); tr.fx.push_back(o.f(x)); tr.fy.push_back(o.f(y));
  }
  return tr;
}

namespace detail {

// Shared engine for the cocoercivity-condition line searches. The candidate
// x_{k+1} depends on the candidate estimate, so every backtrack recomputes
// the full step before testing acceptance.
template <class BCoef, class YMix>
inline Trajectory run_backtracking(Method method, const SmoothOracle& o,
                                   const Vec& x0, std::size_t N, double L0,
                                   double eta, BCoef bcoef, YMix ymix) {
  if (L0 <= 0.0 || eta <= 1.0)
    throw std::invalid_argument(method_name(method) + ": bad search params");
  if (x0.size() != o.dim) throw std::invalid_argument("dim mismatch");
  Trajectory tr;
  tr.method = method;
  tr.oracle_id = o.id;
  tr.L0 = L0;
  Vec x = x0, z = x0;
  tr.x.push_back(x); tr.y.push_back(x); tr.z.push_back(z);
  tr.g.push_back(o.grad(x)); tr.fx.push_back(o.f(x)); tr.fy.push_back(tr.fx[0]);
  double Lk = L0;
  for (std::size_t k = 0; k < N; ++k) {
    Vec gx = o.grad(x);
    double b = bcoef(k), m = ymix(k);
    auto make = [&](double Lt) {
      Vec y1 = axpy(-1.0 / Lt, gx, x);
      Vec z1 = axpy(-b / Lt, gx, z);
      Vec x1(o.dim);
      for (std::size_t j = 0; j < o.dim; ++j) x1[j] = m * y1[j] + (1.0 - m) * z1[j];
      return std::make_pair(std::move(y1), std::make_pair(std::move(z1), std::move(x1)));
    };
    double L1 = Lk;
    int tries = 0;
    while (true) {
      auto cand = make(L1);
      if (search_ok(residual(IneqKind::cocoercivity, o, x, cand.second.second, -1, L1)))
        break;
      L1 *= eta;
      if (++tries > kMaxBacktracks)
        throw std::runtime_error(method_name(method) + ": backtracking did not terminate");
      ++tr.backtracks;
    }
    bool jumped = L1 > Lk;
    tr.jump_flag.push_back(jumped ? 1 : 0);
    if (jumped) tr.jumps.push_back(k);
    auto step = make(L1);
    x = step.second.second; z = step.second.first;
    detail::check_finite(x, "backtracking method");
    Lk = L1;
    tr.Lk.push_back(L1);
    tr.x.push_back(x); tr.y.push_back(step.first); tr.z.push_back(z);
    tr.g.push_back(o.grad(x)); tr.fx.push_back(o.f(x)); tr.fy.push_back(o.f(step.first));
  }
  return tr;
}

}  // namespace detail

inline Trajectory run_obl_f(const SmoothOracle& o, const Vec& x0, std::size_t N,
                            double L0, double eta) {
  auto tr = detail::run_backtracking(
      Method::OBL_F, o, x0, N, L0, eta,
      [](std::size_t k) { return static_cast<double>(k) + 1.0; },
      [](std::size_t k) { return 1.0 - 2.0 / (static_cast<double>(k) + 3.0); });
  // jump-correction sums over K; proof-form terms use (k+1)(k+2)/2 with the
  // estimates before/after step k, statement-form shifts the coefficient index
  for (std::size_t k : tr.jumps) {
    double before = (k == 0) ? L0 : tr.Lk[k - 1];
    double after = tr.Lk[k];
    double gsq = norm2(tr.g[k]);
    double kd = static_cast<double>(k);
    double w = 1.0 / (before * before) - 1.0 / (after * after);
    tr.corr_sum_proof += (kd + 1.0) * (kd + 2.0) / 2.0 * w * gsq;
    tr.corr_sum_statement += (kd + 2.0) * (kd + 3.0) / 2.0 * w * gsq;
  }
  return tr;
}

inline Trajectory run_obl_g(const SmoothOracle& o, const Vec& x0, std::size_t N,
                            double L0, double eta) {
  if (N < 3) throw std::invalid_argument("run_obl_g: horizon must be >= 3");
  double Nd = static_cast<double>(N);
  auto tr = detail::run_backtracking(
      Method::OBL_G, o, x0, N, L0, eta,
      [Nd](std::size_t k) {
        if (k == 0) return (1.0 + std::sqrt(Nd * (Nd + 1.0) / 2.0)) / 2.0;
        double kd = static_cast<double>(k);
        return (Nd - kd + 1.0) / 2.0;
      },
      [Nd](std::size_t k) {
        double kd = static_cast<double>(k);
        return (Nd - kd - 2.0) / (Nd - kd + 2.0);
      });
  // jump corrections reference f(x_N), so they are accumulated post-run
  double fN = tr.fx[N];
  for (std::size_t k = 1; k + 1 < N; ++k) {
    double Lprev = tr.Lk[k - 1], Lcur = tr.Lk[k];
    if (Lcur == Lprev) continue;
    double kd = static_cast<double>(k);
    double gsq = norm2(tr.g[k]);
    double term = 1.0 / ((Nd - kd) * (Nd - kd + 1.0)) * (1.0 / Lprev - 1.0 / Lcur) *
                  (tr.fx[k] - 0.5 * (1.0 / Lprev + 1.0 / Lcur) * gsq - fN);
    tr.corr_sum_proof += term;
    tr.corr_sum_statement += term;
  }
  return tr;
}

}  // namespace accel
