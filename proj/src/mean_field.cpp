#include "pstar/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pstar/error.hpp"

namespace pstar {

namespace {

constexpr double kClampEps = 1e-12;
constexpr double kSingularDet = 1e-14;
// exp(300)^2 and exp(200)^3 stay finite; past these the probabilities are 0 anyway.
constexpr double kMaxSquaredExponent = 300.0;
constexpr double kMaxCubedExponent = 200.0;

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorCode::kBadDimension, "mean-field equations need n >= 3, got " + std::to_string(n));
}

double logistic_of_neg(double a) {
  // 1 / (1 + e^a) without overflow
  if (a >= 0.0) {
    const double e = std::exp(-a);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(a));
}

double clamp_unit(double x) { return std::clamp(x, kClampEps, 1.0 - kClampEps); }

struct Terms {
  double fp = 0.0;      // F_p
  double sp = 0.0;      // F_p (1 - F_p)
  double num = 0.0;     // e^-sigma (1 + (e^alpha - 1) p)
  double num_dp = 0.0;  // d num / dp
  double eq = 0.0;      // e^{a_q}
  double den = 0.0;     // (e^{a_q} + 1)^2 + num - 1
  double fq = 0.0;      // F_q
};

Terms evaluate(const HamiltonianParams& h, int n, double p, double q) {
  const double m2 = n - 2;
  const double m3 = n - 3;
  Terms t;
  const double ap = h.theta - h.alpha * m2 * q + 2.0 * h.sigma * m2 * p;
  t.fp = logistic_of_neg(ap);
  t.sp = t.fp * (1.0 - t.fp);

  const double es = std::exp(-h.sigma);
  const double em1 = std::expm1(h.alpha);
  t.num = es * (1.0 + em1 * p);
  t.num_dp = es * em1;
  const double aq = std::min(h.theta - h.alpha * m3 * q + h.sigma * (2.0 * n - 5.0) * p, kMaxSquaredExponent);
  t.eq = std::exp(aq);
  const double b = t.eq + 1.0;
  t.den = b * b + t.num - 1.0;
  t.fq = t.num / t.den;
  return t;
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kHigh: return "HIGH";
    case Phase::kLow: return "LOW";
    case Phase::kBoundary: return "BOUNDARY";
  }
  return "UNKNOWN";
}

double psi(const HamiltonianParams& h, int n, double p) {
  require_dimension(n);
  return h.theta + 2.0 * h.sigma * (n - 2) * p - h.alpha * (n - 2) * p * p;
}

double phi(const HamiltonianParams& h, int n, double p) { return 1.0 / (1.0 + std::exp(psi(h, n, p))); }

double phi_prime(const HamiltonianParams& h, int n, double p) {
  const double f = phi(h, n, p);
  const double dpsi = 2.0 * h.sigma * (n - 2) - 2.0 * h.alpha * (n - 2) * p;
  return -dpsi * f * (1.0 - f);
}

PhaseDiagnostic find_fixed_points(const HamiltonianParams& h, int n, const FixedPointScan& scan) {
  require_dimension(n);
  if (scan.grid_points < 2) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 2 points");
  const auto gap = [&](double p) { return phi(h, n, p) - p; };
  const int m = scan.grid_points;

  PhaseDiagnostic out;
  double x0 = 0.0;
  double f0 = gap(x0);
  for (int i = 1; i <= m; ++i) {
    const double x1 = static_cast<double>(i) / m;
    const double f1 = gap(x1);
    if (f0 == 0.0 && x0 > 0.0) {
      out.fixed_points.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double lo = x0, hi = x1, flo = f0;
      while (hi - lo > scan.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = gap(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.fixed_points.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }

  for (double p : out.fixed_points) out.derivatives.push_back(phi_prime(h, n, p));
  if (out.fixed_points.size() >= 2) {
    out.phase = Phase::kLow;
  } else if (out.fixed_points.size() == 1 && std::abs(out.derivatives.front()) < 1.0) {
    out.phase = Phase::kHigh;
  } else {
    out.phase = Phase::kBoundary;
  }
  return out;
}

std::pair<double, double> mf_map(const HamiltonianParams& h, int n, double p, double q) {
  require_dimension(n);
  const Terms t = evaluate(h, n, p, q);
  return {t.fp, t.fq};
}

std::pair<double, double> mf_residuals(const HamiltonianParams& h, int n, double p, double q) {
  const auto [fp, fq] = mf_map(h, n, p, q);
  return {p - fp, q - fq};
}

Matrix2 mf_jacobian(const HamiltonianParams& h, int n, double p, double q) {
  require_dimension(n);
  const Terms t = evaluate(h, n, p, q);
  const double m2 = n - 2;
  const double m3 = n - 3;

  const double dfp_dp = -t.sp * 2.0 * h.sigma * m2;
  const double dfp_dq = t.sp * h.alpha * m2;

  const double b = t.eq + 1.0;
  const double dden_dp = 2.0 * b * t.eq * h.sigma * (2.0 * n - 5.0) + t.num_dp;
  const double dden_dq = -2.0 * b * t.eq * h.alpha * m3;
  const double den2 = t.den * t.den;
  const double dfq_dp = (t.num_dp * t.den - t.num * dden_dp) / den2;
  const double dfq_dq = -t.num * dden_dq / den2;

  return {{{1.0 - dfp_dp, -dfp_dq}, {-dfq_dp, 1.0 - dfq_dq}}};
}

namespace {

std::pair<double, double> default_start(const HamiltonianParams& h, int n, const NewtonConfig& cfg) {
  if (cfg.initial) return *cfg.initial;
  const PhaseDiagnostic d = find_fixed_points(h, n);
  const double p0 = d.phase == Phase::kHigh ? d.fixed_points.front() : 0.5;
  return {p0, p0 * p0};
}

}  // namespace

NewtonResult newton_solve(const HamiltonianParams& h, int n, const NewtonConfig& cfg) {
  require_dimension(n);
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1 || !(cfg.damping > 0.0 && cfg.damping <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "NewtonConfig needs tol > 0, max_iter >= 1, damping in (0,1]");
  }
  auto [p, q] = default_start(h, n, cfg);
  p = clamp_unit(p);
  q = clamp_unit(q);

  for (int it = 0;; ++it) {
    const auto [gp, gq] = mf_residuals(h, n, p, q);
    const double norm = std::hypot(gp, gq);
    if (norm <= cfg.tol) return {p, q, it, norm};
    if (!std::isfinite(norm)) throw Error(ErrorCode::kNonFinite, "mean-field residual is not finite");
    if (it == cfg.max_iter) {
      throw Error(ErrorCode::kMaxIterExceeded, "Newton stopped after " + std::to_string(it) +
                                                   " iterations with residual " + std::to_string(norm));
    }
    const Matrix2 j = mf_jacobian(h, n, p, q);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (std::abs(det) < kSingularDet) {
      throw Error(ErrorCode::kSingularJacobian, "det J = " + std::to_string(det) + " at p = " + std::to_string(p));
    }
    const double dp = (j[1][1] * gp - j[0][1] * gq) / det;
    const double dq = (j[0][0] * gq - j[1][0] * gp) / det;
    p = clamp_unit(p - cfg.damping * dp);
    q = clamp_unit(q - cfg.damping * dq);
  }
}

NewtonResult damped_fixed_point(const HamiltonianParams& h, int n, double p0, double q0, double damping,
                                int max_sweeps, double tol) {
  require_dimension(n);
  double p = clamp_unit(p0);
  double q = clamp_unit(q0);
  for (int it = 0;; ++it) {
    const auto [fp, fq] = mf_map(h, n, p, q);
    const double norm = std::hypot(p - fp, q - fq);
    if (norm <= tol) return {p, q, it, norm};
    if (it == max_sweeps) {
      throw Error(ErrorCode::kMaxIterExceeded, "fixed-point iteration stalled at residual " + std::to_string(norm));
    }
    p = clamp_unit((1.0 - damping) * p + damping * fp);
    q = clamp_unit((1.0 - damping) * q + damping * fq);
  }
}

double mf_r(const HamiltonianParams& h, int n, double p, double q) {
  require_dimension(n);
  const double a = std::min(h.theta - h.alpha * q * (n - 3) + 2.0 * h.sigma * (n - 3) * p + h.sigma,
                            kMaxCubedExponent);
  const double b = std::exp(a) + 1.0;
  // e^alpha / (b^3 + e^alpha - 1), divided through by e^alpha
  const double inv = std::exp(-h.alpha);
  return 1.0 / (b * b * b * inv + 1.0 - inv);
}

MFState mf_state(const HamiltonianParams& h, int n, const NewtonConfig& cfg) {
  require_dimension(n);
  NewtonResult sol;
  try {
    sol = newton_solve(h, n, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularJacobian && e.code() != ErrorCode::kMaxIterExceeded) throw;
    const auto [p0, q0] = default_start(h, n, cfg);
    try {
      sol = damped_fixed_point(h, n, p0, q0, 0.5, 10000, cfg.tol);
    } catch (const Error& inner) {
      if (inner.code() != ErrorCode::kMaxIterExceeded) throw;
      throw Error(ErrorCode::kLowTemperatureSuspected,
                  std::string("Newton failed (") + e.what() + ") and fixed-point fallback did not converge");
    }
  }
  return {sol.p, sol.q, mf_r(h, n, sol.p, sol.q)};
}

MomentsVector scale_moments(const MFState& s, int n) {
  const SufficientStats mx = max_stats(n);
  return {static_cast<double>(mx.edges) * s.p, static_cast<double>(mx.two_stars) * s.q,
          static_cast<double>(mx.triangles) * s.r};
}

MomentsVector mf_moments(const NaturalParams& p, int n, const NewtonConfig& cfg) {
  return scale_moments(mf_state(to_hamiltonian(p), n, cfg), n);
}

}  // namespace pstar
