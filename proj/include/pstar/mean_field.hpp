#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pstar/model.hpp"

namespace pstar {

/// Mean-field edge, 2-star and triangle probabilities.
struct MFState {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

struct NewtonConfig {
  /// Threshold on the Euclidean norm of the residual (G_p, G_q).
  double tol = 1e-12;
  int max_iter = 100;
  /// Starting point; when empty the scalar fixed point of phi seeds p0 and q0 = p0^2.
  std::optional<std::pair<double, double>> initial;
  /// Fraction of the Newton step taken, in (0, 1].
  double damping = 1.0;
};

struct NewtonResult {
  double p = 0.0;
  double q = 0.0;
  int iterations = 0;
  double residual_norm = 0.0;
};

enum class Phase { kHigh, kLow, kBoundary };

std::string_view to_string(Phase phase);

struct PhaseDiagnostic {
  /// Sorted roots of phi(p) = p in (0, 1).
  std::vector<double> fixed_points;
  /// phi'(p*) at each root.
  std::vector<double> derivatives;
  Phase phase = Phase::kBoundary;
};

/// Psi(p) = theta + 2 sigma (n-2) p - alpha (n-2) p^2.
double psi(const HamiltonianParams& h, int n, double p);
/// phi(p) = 1 / (1 + exp(Psi(p))).
double phi(const HamiltonianParams& h, int n, double p);
/// phi'(p) = -Psi'(p) phi (1 - phi).
double phi_prime(const HamiltonianParams& h, int n, double p);

struct FixedPointScan {
  int grid_points = 10000;
  double bisection_tol = 1e-12;
};

/// Locates every root of phi(p) - p in (0, 1) and classifies the phase:
/// HIGH iff there is exactly one root and |phi'| < 1 there.
PhaseDiagnostic find_fixed_points(const HamiltonianParams& h, int n, const FixedPointScan& scan = {});

/// Right-hand sides of the coupled mean-field equations for p and q.
std::pair<double, double> mf_map(const HamiltonianParams& h, int n, double p, double q);

/// (G_p, G_q) = (p - F_p(p, q), q - F_q(p, q)).
std::pair<double, double> mf_residuals(const HamiltonianParams& h, int n, double p, double q);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Analytic Jacobian [[dGp/dp, dGp/dq], [dGq/dp, dGq/dq]].
Matrix2 mf_jacobian(const HamiltonianParams& h, int n, double p, double q);

/// Newton iteration x <- x - damping * J^-1 G(x), clamped to [1e-12, 1 - 1e-12],
/// until |G| <= tol. Throws SingularJacobian or MaxIterExceeded.
NewtonResult newton_solve(const HamiltonianParams& h, int n, const NewtonConfig& cfg = {});

/// Damped sweeps p <- (1-w) p + w F_p, q <- (1-w) q + w F_q. Throws
/// MaxIterExceeded when the residual never drops below tol.
NewtonResult damped_fixed_point(const HamiltonianParams& h, int n, double p0, double q0, double damping = 0.5,
                                int max_sweeps = 10000, double tol = 1e-12);

/// Triangle probability given the solved (p, q).
double mf_r(const HamiltonianParams& h, int n, double p, double q);

/// Solves for (p, q), falling back to damped fixed-point iteration when
/// Newton fails; throws LowTemperatureSuspected if both fail.
MFState mf_state(const HamiltonianParams& h, int n, const NewtonConfig& cfg = {});

/// C(n,2) p, n C(n-1,2) q, C(n,3) r.
MomentsVector mf_moments(const NaturalParams& p, int n, const NewtonConfig& cfg = {});

/// Moments from an already solved state.
MomentsVector scale_moments(const MFState& s, int n);

}  // namespace pstar
