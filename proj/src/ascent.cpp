#include "pstar/ascent.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "pstar/error.hpp"

namespace pstar {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kMlleExact: return "MLLE_EXACT";
    case Method::kMple: return "MLPLE";
    case Method::kMfMlle: return "MF_MLLE";
  }
  return "UNKNOWN";
}

void validate(const GradientAscentConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) {
    throw Error(ErrorCode::kInvalidArgument, "step must be positive, got " + std::to_string(cfg.step));
  }
  if (cfg.max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (cfg.trace_every < 1) throw Error(ErrorCode::kInvalidArgument, "trace_every must be >= 1");
  if (cfg.grad_tol && !(*cfg.grad_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grad_tol must be positive");
  to_hamiltonian(cfg.init);  // finiteness
}

EstimateResult gradient_ascent(Method method, const GradientAscentConfig& cfg, const AscentObjective& eval,
                               const AscentGuards& guards) {
  using Clock = std::chrono::steady_clock;
  validate(cfg);

  EstimateResult result;
  result.method = method;
  std::array<double, 3> theta = cfg.init.as_array();
  double prev_objective = std::numeric_limits<double>::quiet_NaN();
  int decreases = 0;
  const auto start = Clock::now();

  for (int k = 1; k <= cfg.max_iter; ++k) {
    const auto t0 = Clock::now();
    AscentEval e = eval(NaturalParams::from_array(theta), k);
    double gnorm = 0.0;
    for (int c = 0; c < 3; ++c) {
      if (!cfg.active[c]) e.gradient[c] = 0.0;
      if (!std::isfinite(e.gradient[c])) {
        throw Error(ErrorCode::kNonFinite, "gradient became non-finite at iteration " + std::to_string(k));
      }
      gnorm = std::max(gnorm, std::abs(e.gradient[c]));
    }

    const bool stop = cfg.grad_tol && gnorm < *cfg.grad_tol;
    if (!stop) {
      for (int c = 0; c < 3; ++c) theta[c] += cfg.step * e.gradient[c];
    }
    const double dt = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    result.iterations = k;

    if (stop || k % cfg.trace_every == 0 || k == cfg.max_iter) {
      result.trace.push_back({k, NaturalParams::from_array(theta), e.gradient, e.objective, dt});
    }
    if (stop) {
      result.converged = true;
      break;
    }

    if (guards.divergence_window > 0 && std::isfinite(e.objective) && std::isfinite(prev_objective)) {
      // rounding noise near the optimum does not count as a decrease
      const double slack = 1e-12 * (1.0 + std::abs(prev_objective));
      decreases = e.objective < prev_objective - slack ? decreases + 1 : 0;
      if (decreases >= guards.divergence_window) {
        throw Error(ErrorCode::kDivergence, "objective decreased for " + std::to_string(decreases) +
                                                " consecutive iterations ending at " + std::to_string(k) +
                                                "; step too large");
      }
    }
    prev_objective = e.objective;

    for (double t : theta) {
      if (std::abs(t) > guards.theta_bound) {
        throw Error(ErrorCode::kSeparation, "parameters exceeded bound " + std::to_string(guards.theta_bound) +
                                                " at iteration " + std::to_string(k) + "; estimate does not exist");
      }
    }
  }

  result.theta_star = NaturalParams::from_array(theta);
  result.total_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

}  // namespace pstar
