#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "accel/coeffs.hpp"
#include "accel/linalg.hpp"
#include "accel/oracles.hpp"

namespace accel {

// Fixed-step methods carry an h-matrix schedule; the rest (randomized
// coordinate updates, backtracking line searches) live in adaptive.hpp but
// share this enum and the Trajectory record.
enum class Method {
  GD,
  FGM,
  OGM,
  OGM_G,
  ORC_F_FLAT,
  OBL_F_FLAT,
  OBL_G_FLAT,
  CUSTOM,
  // adaptive variants
  FGM_RC,
  FGM_RC_SHARP,
  FGM_BL,
  ORC_F,
  OBL_F,
  OBL_G,
};

inline bool is_fixed_step(Method m) {
  switch (m) {
    case Method::GD: case Method::FGM: case Method::OGM: case Method::OGM_G:
    case Method::ORC_F_FLAT: case Method::OBL_F_FLAT: case Method::OBL_G_FLAT:
    case Method::CUSTOM:
      return true;
    default:
      return false;
  }
}

inline std::string method_name(Method m) {
  switch (m) {
    case Method::GD: return "gd";
    case Method::FGM: return "fgm";
    case Method::OGM: return "ogm";
    case Method::OGM_G: return "ogm-g";
    case Method::ORC_F_FLAT: return "orc-f-flat";
    case Method::OBL_F_FLAT: return "obl-f-flat";
    case Method::OBL_G_FLAT: return "obl-g-flat";
    case Method::CUSTOM: return "custom";
    case Method::FGM_RC: return "fgm-rc";
    case Method::FGM_RC_SHARP: return "fgm-rc-sharp";
    case Method::FGM_BL: return "fgm-bl";
    case Method::ORC_F: return "orc-f";
    case Method::OBL_F: return "obl-f";
    case Method::OBL_G: return "obl-g";
  }
  return "?";
}

inline Method method_from_name(const std::string& s) {
  for (Method m : {Method::GD, Method::FGM, Method::OGM, Method::OGM_G,
                   Method::ORC_F_FLAT, Method::OBL_F_FLAT, Method::OBL_G_FLAT,
                   Method::CUSTOM, Method::FGM_RC, Method::FGM_RC_SHARP,
                   Method::FGM_BL, Method::ORC_F, Method::OBL_F, Method::OBL_G})
    if (method_name(m) == s) return m;
  throw std::invalid_argument("unknown method id: " + s);
}

// Three-sequence step coefficients for step k = 0..N-1:
//   y_{k+1} = x_k - (a_k / L) g(x_k)
//   z_{k+1} = z_k - (b_k / L) g(x_k)
//   x_{k+1} = m_k y_{k+1} + (1 - m_k) z_{k+1}
struct ThreeSeqCoeffs {
  std::vector<double> a, b, m;
};

inline ThreeSeqCoeffs three_seq_coeffs(Method method, std::size_t N,
                                       const CoefficientTable& tab) {
  ThreeSeqCoeffs c;
  c.a.assign(N, 1.0);
  c.b.resize(N);
  c.m.resize(N);
  switch (method) {
    case Method::GD:
      for (std::size_t k = 0; k < N; ++k) { c.b[k] = 1.0; c.m[k] = 1.0; }
      break;
    case Method::FGM:
      for (std::size_t k = 0; k < N; ++k) {
        c.b[k] = tab.theta(k);
        c.m[k] = 1.0 - 1.0 / tab.theta(k + 1);
      }
      break;
    case Method::OGM:
      for (std::size_t k = 0; k < N; ++k) {
        c.b[k] = 2.0 * tab.theta(k);
        double mix = (k + 1 == N) ? tab.theta_tilde(N) : tab.theta(k + 1);
        c.m[k] = 1.0 - 1.0 / mix;
      }
      break;
    case Method::OGM_G: {
      double tt = tab.theta_tilde(N);
      c.b[0] = (1.0 + tt) / 2.0;
      c.m[0] = std::pow(tab.theta(N - 1), 4) / std::pow(tt, 4);
      for (std::size_t k = 1; k < N; ++k) {
        c.b[k] = tab.theta(N - k);
        c.m[k] = std::pow(tab.theta(N - k - 1), 4) / std::pow(tab.theta(N - k), 4);
      }
      break;
    }
    case Method::ORC_F_FLAT:
      for (std::size_t k = 0; k < N; ++k) {
        c.b[k] = tab.phi(k + 1) - tab.phi(k);
        c.m[k] = tab.phi(k + 1) / tab.phi(k + 2);
      }
      break;
    case Method::OBL_F_FLAT:
      for (std::size_t k = 0; k < N; ++k) {
        c.b[k] = static_cast<double>(k) + 1.0;
        c.m[k] = 1.0 - 2.0 / (static_cast<double>(k) + 3.0);
      }
      break;
    case Method::OBL_G_FLAT: {
      double Nd = static_cast<double>(N);
      c.b[0] = (1.0 + std::sqrt(Nd * (Nd + 1.0) / 2.0)) / 2.0;
      c.m[0] = (Nd - 2.0) / (Nd + 2.0);
      for (std::size_t k = 1; k < N; ++k) {
        double kd = static_cast<double>(k);
        c.b[k] = (Nd - kd + 1.0) / 2.0;
        c.m[k] = (Nd - kd - 2.0) / (Nd - kd + 2.0);
      }
      break;
    }
    default:
      throw std::invalid_argument("three_seq_coeffs: not a fixed-step method");
  }
  return c;
}

struct FsfoSchedule {
  std::size_t N = 0;
  Method method = Method::CUSTOM;
  // h[i][k], 0 <= k < i <= N; h[0] unused. Row i drives x_i from x_{i-1}.
  std::vector<std::vector<double>> h;
};

// Unrolls the three-sequence recursion into gradient coefficients:
// x_k = x_0 - (1/L) sum_t cx[k][t] g_t, and h rows are first differences.
inline FsfoSchedule unroll_three_seq(Method method, std::size_t N,
                                     const ThreeSeqCoeffs& c) {
  std::vector<Vec> cx(N + 1, Vec(N, 0.0)), cz(N + 1, Vec(N, 0.0));
  for (std::size_t k = 0; k < N; ++k) {
    Vec cy = cx[k];
    cy[k] += c.a[k];
    cz[k + 1] = cz[k];
    cz[k + 1][k] += c.b[k];
    for (std::size_t t = 0; t < N; ++t)
      cx[k + 1][t] = c.m[k] * cy[t] + (1.0 - c.m[k]) * cz[k + 1][t];
  }
  FsfoSchedule s;
  s.N = N;
  s.method = method;
  s.h.assign(N + 1, {});
  for (std::size_t i = 1; i <= N; ++i) {
    s.h[i].assign(i, 0.0);
    for (std::size_t t = 0; t < i; ++t) s.h[i][t] = cx[i][t] - cx[i - 1][t];
  }
  return s;
}

// The closed-form schedule for the gradient-norm method: zero last row except
// a unit subdiagonal entry, rational interior rows. build_schedule must agree
// with this entrywise.
inline FsfoSchedule obl_g_flat_h_explicit(std::size_t N) {
  if (N < 3) throw std::invalid_argument("obl-g-flat: horizon must be >= 3");
  double Nd = static_cast<double>(N);
  double bh0 = 2.0 * (std::sqrt(Nd * (Nd + 1.0) / 2.0) - 1.0) /
               ((Nd - 1.0) * Nd * (Nd + 1.0) * (Nd + 2.0));
  FsfoSchedule s;
  s.N = N;
  s.method = Method::OBL_G_FLAT;
  s.h.assign(N + 1, {});
  for (std::size_t i = 1; i <= N; ++i) s.h[i].assign(i, 0.0);
  s.h[1][0] = (Nd + std::sqrt(2.0 * Nd * (Nd + 1.0))) / (Nd + 2.0);
  for (std::size_t i = 2; i <= N; ++i) {
    double id = static_cast<double>(i);
    if (i < N) {
      s.h[i][i - 1] = 3.0 * (Nd - id + 1.0) / (Nd - id + 3.0);
      s.h[i][0] = (Nd * (Nd - 2.0) - (id - 2.0) * (2.0 * Nd - id)) * (Nd - id + 1.0) * bh0;
      for (std::size_t j = 1; j + 1 < i; ++j) {
        double jd = static_cast<double>(j);
        s.h[i][j] = 2.0 * (Nd - id) * (Nd - id + 1.0) * (Nd - id + 2.0) /
                    ((Nd - jd) * (Nd - jd + 1.0) * (Nd - jd + 2.0));
      }
    } else {
      s.h[N][N - 1] = 1.0;  // h_{N,j} = 0 otherwise
    }
  }
  return s;
}

inline FsfoSchedule build_schedule(Method method, std::size_t N,
                                   const CoefficientTable& tab) {
  if (N < 1) throw std::invalid_argument("build_schedule: horizon must be >= 1");
  if (method == Method::OBL_G_FLAT && N < 3)
    throw std::invalid_argument("obl-g-flat: horizon must be >= 3");
  return unroll_three_seq(method, N, three_seq_coeffs(method, N, tab));
}

struct Trajectory {
  Method method = Method::CUSTOM;
  std::string oracle_id;
  std::uint64_t seed = 0;

  std::vector<Vec> x;   // x_0 .. x_N
  std::vector<Vec> y;   // y_0 = x_0, then y_{k+1} from step k (when defined)
  std::vector<Vec> z;   // z_0 = x_0, then z_{k+1}
  std::vector<Vec> g;   // gradient at x_k
  std::vector<double> fx, fy;

  // adaptive extras (empty for plain fixed-step runs)
  double L0 = 0.0;                 // initial line-search estimate
  std::vector<double> Lk;          // estimate used for step k (size N)
  std::vector<std::size_t> coord;  // coordinate drawn at step k
  std::vector<int> jump_flag;      // 1 when step k raised the estimate
  std::vector<std::size_t> jumps;  // the jump set K
  double S = 0.0;                  // sum of sqrt(L_i) for coordinate methods
  double corr_sum_proof = 0.0;     // jump corrections, proof-form indexing
  double corr_sum_statement = 0.0; // same sum with statement-form indexing
  std::size_t backtracks = 0;

  std::size_t N() const { return x.empty() ? 0 : x.size() - 1; }
};

namespace detail {
inline void check_finite(const Vec& v, const char* who) {
  for (double t : v)
    if (!std::isfinite(t)) throw std::runtime_error(std::string(who) + ": non-finite iterate");
}
}  // namespace detail

// Executes the canonical form x_{i+1} = x_i - (1/L) sum_k h_{i+1,k} g(x_k),
// and (for built-in methods) replays the three-sequence recursion to fill in
// the y/z streams, asserting both iterate streams agree.
inline Trajectory run_fsfo(const FsfoSchedule& sched, const SmoothOracle& o,
                           const Vec& x0, bool consistency_check = true) {
  if (x0.size() != o.dim) throw std::invalid_argument("run_fsfo: dim mismatch");
  const std::size_t N = sched.N;
  const double L = o.L;
  Trajectory tr;
  tr.method = sched.method;
  tr.oracle_id = o.id;

  tr.x.push_back(x0);
  tr.g.push_back(o.grad(x0));
  tr.fx.push_back(o.f(x0));
  for (std::size_t i = 1; i <= N; ++i) {
    Vec xi = tr.x[i - 1];
    for (std::size_t k = 0; k < i; ++k)
      if (sched.h[i][k] != 0.0) xi = axpy(-sched.h[i][k] / L, tr.g[k], xi);
    detail::check_finite(xi, "run_fsfo");
    tr.x.push_back(xi);
    tr.g.push_back(o.grad(xi));
    tr.fx.push_back(o.f(xi));
  }

  tr.y.push_back(x0);
  tr.z.push_back(x0);
  tr.fy.push_back(tr.fx[0]);
  if (sched.method != Method::CUSTOM && sched.method != Method::GD) {
    CoefficientTable tab;
    auto c = three_seq_coeffs(sched.method, N, tab);
    Vec x = x0, z = x0;
    double ref = o.has_x_star() ? std::sqrt(norm2(sub(x0, o.x_star))) : 1.0;
    for (std::size_t k = 0; k < N; ++k) {
      Vec gx = o.grad(x);
      Vec y1 = axpy(-c.a[k] / L, gx, x);
      Vec z1 = axpy(-c.b[k] / L, gx, z);
      Vec x1(o.dim);
      for (std::size_t j = 0; j < o.dim; ++j)
        x1[j] = c.m[k] * y1[j] + (1.0 - c.m[k]) * z1[j];
      if (consistency_check) {
        double err = std::sqrt(norm2(sub(x1, tr.x[k + 1])));
        if (err > 1e-9 * std::max(1.0, ref))
          throw std::runtime_error("run_fsfo: h-form and three-sequence form disagree");
      }
      tr.y.push_back(y1);
      tr.z.push_back(z1);
      tr.fy.push_back(o.f(y1));
      x = tr.x[k + 1];  // stay on the canonical stream
      z = z1;
    }
  } else {
    for (std::size_t k = 1; k <= N; ++k) {
      tr.y.push_back(tr.x[k]);
      tr.z.push_back(tr.x[k]);
      tr.fy.push_back(tr.fx[k]);
    }
  }
  return tr;
}

// Averaged evaluation point of the function-value backtracking family:
// x~_k = (s y_k + z_k) / (s + 1) with s = sqrt(k(k+1)/2).
inline Vec obl_f_tilde(const Trajectory& tr, std::size_t k) {
  double kd = static_cast<double>(k);
  double s = std::sqrt(kd * (kd + 1.0) / 2.0);
  Vec r(tr.y[k].size());
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = (s * tr.y[k][j] + tr.z[k][j]) / (s + 1.0);
  return r;
}

}  // namespace accel
