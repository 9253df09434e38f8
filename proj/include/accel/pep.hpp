#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "accel/coeffs.hpp"
#include "accel/fsfo.hpp"
#include "accel/linalg.hpp"

namespace accel {

// Closed-form dual certificates for the worst-case performance programs of
// the four optimized schedules, plus assembly and verification of the
// associated S-matrices and multiplier (KKT) matrices. Everything here is a
// formula, no solver: feasibility of these duals is what proves the rates.

struct DualCertificate {
  Method method = Method::FGM;
  std::size_t N = 0;
  double L = 1.0;
  Vec lambda;   // lambda[0] = 0, consecutive-pair multipliers lambda[1..N]
  Vec beta;     // star-inequality multipliers (per-iterate)
  Vec alpha;    // gradient-square weights (function-distance family)
  Vec gamma;    // row weights entering the r -> h triangular solve
  double tau = 0.0;
  double scale = 1.0;  // pivot normalization: the g_N diagonal equals scale/(2L)
  Mat r;               // r[k][t], 1 <= k <= N, 0 <= t < k
  // gradient-norm family extras
  double lam_total = 0.0, bh0 = 0.0;
};

// ---- certificate construction ----

inline DualCertificate build_certificate(Method method, std::size_t N, double L,
                                         const CoefficientTable& tab) {
  if (N < 1) throw std::invalid_argument("build_certificate: N >= 1 required");
  DualCertificate c;
  c.method = method;
  c.N = N;
  c.L = L;
  c.lambda.assign(N + 1, 0.0);
  c.beta.assign(N + 1, 0.0);
  c.alpha.assign(N + 1, 0.0);
  switch (method) {
    case Method::FGM: {
      double thN2 = tab.theta(N) * tab.theta(N);
      for (std::size_t k = 1; k <= N; ++k)
        c.lambda[k] = tab.theta(k - 1) * tab.theta(k - 1) / thN2;
      c.tau = L / (2.0 * thN2);
      c.scale = 1.0;
      break;
    }
    case Method::ORC_F_FLAT: {
      double phN1 = tab.phi(N + 1);
      for (std::size_t k = 1; k <= N; ++k) c.lambda[k] = tab.phi(k) / phN1;
      c.tau = L / (2.0 * phN1);
      c.scale = 2.0 - c.lambda[N];
      break;
    }
    case Method::OBL_F_FLAT: {
      double Nd = static_cast<double>(N);
      double sN = Nd * (Nd + 1.0) / 2.0;
      double T = 1.0 / (sN + std::sqrt(sN));
      for (std::size_t k = 1; k <= N; ++k) {
        double kd = static_cast<double>(k);
        c.lambda[k] = kd * (kd + 1.0) / 2.0 * T;
      }
      c.tau = L / (Nd * (Nd + 1.0) + std::sqrt(2.0 * Nd * (Nd + 1.0)));
      c.scale = c.lambda[N];
      break;
    }
    case Method::OBL_G_FLAT: {
      if (N < 3) throw std::invalid_argument("obl-g-flat certificate: N >= 3");
      double Nd = static_cast<double>(N);
      c.bh0 = 2.0 * (std::sqrt(Nd * (Nd + 1.0) / 2.0) - 1.0) /
              ((Nd - 1.0) * Nd * (Nd + 1.0) * (Nd + 2.0));
      c.lam_total = 2.0 * L / (0.5 + 1.0 / (Nd * (Nd + 1.0)) - c.bh0);
      c.tau = 2.0 * L - c.lam_total / 2.0;
      for (std::size_t k = 1; k <= N; ++k) {
        double kd = static_cast<double>(k);
        c.lambda[N - k + 1] = c.lam_total / (kd * (kd + 1.0));
      }
      c.beta[0] = c.bh0 * c.lam_total;
      for (std::size_t k = 1; k < N; ++k) {
        double kd = static_cast<double>(k);
        c.beta[k] = 2.0 * c.lam_total /
                    ((Nd - kd) * (Nd - kd + 1.0) * (Nd - kd + 2.0));
      }
      c.gamma = c.beta;
      return c;  // no alpha / r-matrix in the gradient-norm family
    }
    default:
      throw std::invalid_argument("build_certificate: unsupported method");
  }
  // shared linear-constraint pattern of the function-distance families
  c.beta[0] = c.lambda[1];
  for (std::size_t k = 1; k < N; ++k) c.beta[k] = c.lambda[k + 1] - c.lambda[k];
  c.beta[N] = 1.0 - c.lambda[N];
  for (std::size_t k = 0; k < N; ++k) c.alpha[k] = c.lambda[k + 1];
  c.alpha[N] = 1.0;
  c.gamma = c.beta;
  // r-variables: rank-one pattern off the subdiagonal, lambda on it
  c.r = Mat(N + 1, N + 1);
  Vec u(N);
  for (std::size_t t = 0; t < N; ++t) u[t] = c.scale * c.beta[t] / c.beta[N];
  for (std::size_t t = 0; t + 1 < N; ++t) c.r.at(N, t) = u[t];
  c.r.at(N, N - 1) = u[N - 1] + c.lambda[N];
  for (std::size_t k = 1; k < N; ++k)
    for (std::size_t t = 0; t < k; ++t)
      c.r.at(k, t) = u[k] * u[t] / c.scale + (t + 1 == k ? c.lambda[k] : 0.0);
  return c;
}

// The schedule against which function-distance certificates are assembled.
// For the backtracking-family certificate the final row is the averaged
// evaluation point x~_N, not a plain method step.
inline FsfoSchedule certificate_schedule(Method method, std::size_t N,
                                         const CoefficientTable& tab) {
  if (method != Method::OBL_F_FLAT) return build_schedule(method, N, tab);
  std::vector<Vec> cx(N + 1, Vec(N, 0.0)), cz(N + 1, Vec(N, 0.0));
  for (std::size_t k = 0; k < N; ++k) {
    Vec cy = cx[k];
    cy[k] += 1.0;
    cz[k + 1] = cz[k];
    cz[k + 1][k] += static_cast<double>(k) + 1.0;
    double m = 1.0 - 2.0 / (static_cast<double>(k) + 3.0);
    for (std::size_t t = 0; t < N; ++t)
      cx[k + 1][t] = m * cy[t] + (1.0 - m) * cz[k + 1][t];
  }
  double s = std::sqrt(static_cast<double>(N) * (static_cast<double>(N) + 1.0) / 2.0);
  Vec cyN = cx[N - 1];
  cyN[N - 1] += 1.0;
  FsfoSchedule sched;
  sched.N = N;
  sched.method = Method::OBL_F_FLAT;
  sched.h.assign(N + 1, {});
  for (std::size_t i = 1; i < N; ++i) {
    sched.h[i].assign(i, 0.0);
    for (std::size_t t = 0; t < i; ++t) sched.h[i][t] = cx[i][t] - cx[i - 1][t];
  }
  sched.h[N].assign(N, 0.0);
  for (std::size_t t = 0; t < N; ++t)
    sched.h[N][t] = (s * cyN[t] + cz[N][t]) / (s + 1.0) - cx[N - 1][t];
  return sched;
}

namespace pep_detail {

// iterate embedding: basis e_0 = x_0, e_{i+1} = g_i; dimension N+2
inline std::vector<Vec> x_embed(const FsfoSchedule& sched, double L) {
  const std::size_t N = sched.N;
  std::vector<Vec> X(N + 1, Vec(N + 2, 0.0));
  for (auto& row : X) row[0] = 1.0;
  for (std::size_t k = 1; k <= N; ++k) {
    X[k] = X[k - 1];
    for (std::size_t t = 0; t < k; ++t) X[k][t + 1] -= sched.h[k][t] / L;
  }
  return X;
}

inline Vec g_embed(std::size_t i, std::size_t dim) {
  Vec e(dim, 0.0);
  e[i + 1] = 1.0;
  return e;
}

}  // namespace pep_detail

inline SymmetricMatrix assemble_S(const DualCertificate& cert,
                                  const FsfoSchedule& sched) {
  if (sched.N != cert.N) throw std::invalid_argument("assemble_S: N mismatch");
  const std::size_t N = cert.N;
  const double L = cert.L;

  if (cert.method == Method::OBL_G_FLAT) {
    // gradient-only embedding, dimension N+1; the certificate asserts S = 0
    SymmetricMatrix S(N + 1);
    S.at(N, N) = cert.tau / (2.0 * L) - 1.0;
    for (std::size_t k = 1; k <= N; ++k) {
      Vec v(N + 1, 0.0);
      for (std::size_t t = 0; t < k; ++t) v[t] = sched.h[k][t] / L;
      Vec gk(N + 1, 0.0), dg(N + 1, 0.0);
      gk[k] = 1.0;
      dg[k - 1] = 1.0; dg[k] = -1.0;
      rank1_update(S, cert.lambda[k], gk, v);
      rank1_update(S, cert.lambda[k] / (2.0 * L), dg, dg);
    }
    for (std::size_t k = 0; k < N; ++k) {
      Vec w(N + 1, 0.0);
      for (std::size_t j = k + 1; j <= N; ++j)
        for (std::size_t t = 0; t < j; ++t) w[t] += sched.h[j][t] / L;
      Vec gk(N + 1, 0.0);
      gk[k] = 1.0;
      rank1_update(S, -cert.beta[k], w, gk);
    }
    return S;
  }

  const std::size_t dim = N + 2;
  auto X = pep_detail::x_embed(sched, L);
  SymmetricMatrix S(dim);
  rank1_update(S, cert.tau, X[0], X[0]);
  bool star_coco = cert.method == Method::ORC_F_FLAT;
  bool coco_family = cert.method == Method::OBL_F_FLAT;
  for (std::size_t k = 0; k <= N; ++k) {
    Vec gk = pep_detail::g_embed(k, dim);
    if (!coco_family) {
      double cgg = cert.alpha[k] + (star_coco ? cert.beta[k] : 0.0);
      rank1_update(S, cgg / (2.0 * L), gk, gk);
    }
    rank1_update(S, -cert.beta[k], gk, X[k]);
  }
  for (std::size_t k = 1; k <= N; ++k) {
    Vec gk = pep_detail::g_embed(k, dim);
    if (coco_family) {
      Vec d = sub(X[k - 1], X[k]);
      rank1_update(S, cert.lambda[k], gk, d);
      Vec dg = sub(pep_detail::g_embed(k - 1, dim), gk);
      rank1_update(S, cert.lambda[k] / (2.0 * L), dg, dg);
    } else {
      Vec yk = axpy(-1.0 / L, pep_detail::g_embed(k - 1, dim), X[k - 1]);
      rank1_update(S, cert.lambda[k], gk, sub(yk, X[k]));
    }
  }
  return S;
}

inline SymmetricMatrix schur_reduce(const SymmetricMatrix& S, std::size_t pivot_pos) {
  double piv = S.at(pivot_pos, pivot_pos);
  if (piv <= 0.0) throw std::invalid_argument("schur_reduce: nonpositive pivot");
  SymmetricMatrix R(S.n - 1);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < S.n; ++i)
    if (i != pivot_pos) idx.push_back(i);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      R.at(a, b) = S.at(idx[a], idx[b]) -
                   S.at(idx[a], pivot_pos) * S.at(idx[b], pivot_pos) / piv;
  return R;
}

inline FsfoSchedule recover_h(const DualCertificate& cert) {
  const std::size_t N = cert.N;
  FsfoSchedule s;
  s.N = N;
  s.method = cert.method;
  s.h.assign(N + 1, {});
  for (std::size_t i = 1; i <= N; ++i) s.h[i].assign(i, 0.0);

  if (cert.method == Method::OBL_G_FLAT) {
    // backward solve of the S = 0 coefficient equations
    s.h[N][N - 1] = 1.0;
    for (std::size_t i = N - 1; i >= 1; --i) {
      auto colsum = [&](std::size_t j) {
        double acc = 0.0;
        for (std::size_t l = i + 1; l <= N; ++l)
          if (j < s.h[l].size()) acc += s.h[l][j];
        return acc;
      };
      for (std::size_t j = 0; j < i; ++j) {
        double rhs;
        if (j + 1 == i)
          rhs = cert.lambda[i] + cert.beta[i] * colsum(j) + cert.beta[i - 1] * colsum(i);
        else
          rhs = cert.beta[i] * colsum(j) + cert.beta[j] * colsum(i);
        if (cert.lambda[i] == 0.0)
          throw std::runtime_error("recover_h: singular row (lambda = 0)");
        s.h[i][j] = rhs / cert.lambda[i];
      }
    }
    return s;
  }

  // forward column solve: r_{k,t} = (lambda_k + beta_k) h_{k,t} + beta_k * (partial column sum)
  for (std::size_t t = 0; t < N; ++t) {
    double cum = 0.0;
    for (std::size_t k = t + 1; k <= N; ++k) {
      double denom = cert.lambda[k] + cert.beta[k];
      if (denom == 0.0) throw std::runtime_error("recover_h: singular row");
      s.h[k][t] = (cert.r.at(k, t) - cert.beta[k] * cum) / denom;
      cum += s.h[k][t];
    }
  }
  return s;
}

struct KktReport {
  bool ok = false;
  double min_eig_K = 0.0;
  double trace_SK = 0.0;        // |trace(S K)| / (||S|| ||K||)
  double stationarity = 0.0;    // max |S K| / (||S|| ||K||)
  double constraint_residual = 0.0;  // method-specific linear equations on c
  Vec c;
  SymmetricMatrix K;
};

// Multiplier (primal Gram) matrix certifying complementary slackness. FGM uses
// the printed recursion c_{i+1} = c_i (1 - 1/(2 theta_i)) with normalization
// sum theta_i c_i = L^2; the other two families carry a diagonal block whose
// direction is the beta profile, pinned by K sigma = 0 and the boundary
// normalization sum c_i^2 / (L^2 K_ii) = 1.
inline KktReport verify_kkt(const DualCertificate& cert, const CoefficientTable& tab,
                            double tol = 1e-8) {
  if (cert.method == Method::OBL_G_FLAT)
    throw std::invalid_argument("verify_kkt: gradient-norm family not supported");
  const std::size_t N = cert.N;
  const double L = cert.L;
  auto S = assemble_S(cert, certificate_schedule(cert.method, N, tab));
  const std::size_t dim = N + 2;

  KktReport rep;
  rep.c.assign(N + 1, 0.0);
  SymmetricMatrix K(dim);
  K.at(0, 0) = 1.0;
  if (cert.method == Method::FGM) {
    rep.c[0] = 1.0;
    for (std::size_t i = 0; i < N; ++i)
      rep.c[i + 1] = rep.c[i] * (1.0 - 1.0 / (2.0 * tab.theta(i)));
    double norm = 0.0;
    for (std::size_t i = 0; i <= N; ++i) norm += tab.theta(i) * rep.c[i];
    for (double& v : rep.c) v *= L * L / norm;
    for (std::size_t i = 0; i <= N; ++i) {
      K.at(0, i + 1) = K.at(i + 1, 0) = rep.c[i] / L;
      K.at(i + 1, i + 1) = rep.c[i] / tab.theta(i);
    }
    double eq1 = 0.0;
    for (std::size_t i = 0; i <= N; ++i) eq1 += tab.theta(i) * rep.c[i];
    double eq2 = rep.c[N] - K.at(N + 1, N + 1) * tab.theta(N);
    rep.constraint_residual =
        std::max(std::abs(eq1 - L * L) / (L * L), std::abs(eq2) / std::max(1.0, std::abs(rep.c[N])));
  } else {
    // sigma: the pivot column of S (pivot = g_N diagonal)
    const std::size_t p = dim - 1;
    Vec sig(dim);
    for (std::size_t i = 0; i < dim; ++i) sig[i] = S.at(i, p);
    Vec d(N + 1);
    double denom = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      d[i] = cert.beta[i];
      denom += d[i] * sig[i + 1] * sig[i + 1];
    }
    double t = sig[0] * sig[0] / denom;
    double normcheck = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      d[i] *= t;
      rep.c[i] = -L * d[i] * sig[i + 1] / sig[0];
      K.at(0, i + 1) = K.at(i + 1, 0) = rep.c[i] / L;
      K.at(i + 1, i + 1) = d[i];
      normcheck += rep.c[i] * rep.c[i] / (L * L * d[i]);
    }
    rep.constraint_residual = std::abs(normcheck - 1.0);
  }

  rep.K = K;
  rep.min_eig_K = is_psd(K, tol).min_eigenvalue;
  double sn = std::max(S.frob(), 1e-300), kn = std::max(K.frob(), 1e-300);
  double tr = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      double skij = 0.0;
      for (std::size_t l = 0; l < dim; ++l) skij += S.at(i, l) * K.at(l, j);
      if (i == j) tr += skij;
      worst = std::max(worst, std::abs(skij));
    }
  rep.trace_SK = std::abs(tr) / (sn * kn);
  rep.stationarity = worst / (sn * kn);
  rep.ok = rep.min_eig_K >= -tol && rep.trace_SK <= tol &&
           rep.stationarity <= tol && rep.constraint_residual <= tol;
  return rep;
}

// Linear-constraint residual of the closed-form multipliers (beta pattern,
// alpha pattern, nonnegativity); the per-family certificate report feeds on it.
inline double certificate_constraint_residual(const DualCertificate& c) {
  double worst = 0.0;
  const std::size_t N = c.N;
  if (c.method == Method::OBL_G_FLAT) {
    // tau consistency: tau = lambda (1/(N(N+1)) - bh0)
    double Nd = static_cast<double>(N);
    worst = std::abs(c.tau - c.lam_total * (1.0 / (Nd * (Nd + 1.0)) - c.bh0)) /
            std::max(1.0, std::abs(c.tau));
    for (std::size_t k = 1; k <= N; ++k)
      worst = std::max(worst, c.lambda[k] >= 0.0 ? 0.0 : -c.lambda[k]);
    return worst;
  }
  worst = std::max(worst, std::abs(c.beta[0] - c.lambda[1]));
  for (std::size_t k = 1; k < N; ++k)
    worst = std::max(worst, std::abs(c.beta[k] - (c.lambda[k + 1] - c.lambda[k])));
  worst = std::max(worst, std::abs(c.beta[N] - (1.0 - c.lambda[N])));
  if (c.method != Method::OBL_F_FLAT) {
    for (std::size_t k = 0; k < N; ++k)
      worst = std::max(worst, std::abs(c.alpha[k] - c.lambda[k + 1]));
    worst = std::max(worst, std::abs(c.alpha[N] - 1.0));
  }
  for (std::size_t k = 0; k <= N; ++k) {
    worst = std::max(worst, c.beta[k] >= -1e-14 ? 0.0 : -c.beta[k]);
    worst = std::max(worst, c.lambda[k] >= -1e-14 ? 0.0 : -c.lambda[k]);
  }
  return worst;
}

// The closed-form rate constant tau must reproduce: tau = L / (2 * denom)
// with denom the Lyapunov rate denominator used by verify_rate.
inline double certificate_rate_constant(const DualCertificate& c,
                                        const CoefficientTable& tab) {
  double Nd = static_cast<double>(c.N);
  switch (c.method) {
    case Method::FGM: return c.L / (2.0 * tab.theta(c.N) * tab.theta(c.N));
    case Method::ORC_F_FLAT: return c.L / (2.0 * tab.phi(c.N + 1));
    case Method::OBL_F_FLAT:
      return c.L / (Nd * (Nd + 1.0) + std::sqrt(2.0 * Nd * (Nd + 1.0)));
    case Method::OBL_G_FLAT: {
      // tau * L / 2 equals the conjectured gradient-norm risk constant
      double s = std::sqrt(2.0 * Nd * (Nd + 1.0));
      double conj = 2.0 * c.L * c.L * (Nd * Nd + Nd - s) /
                    (Nd * Nd * (Nd + 1.0) * (Nd + 1.0) - 2.0 * s);
      return 2.0 * conj / c.L;
    }
    default: return 0.0;
  }
}

}  // namespace accel
