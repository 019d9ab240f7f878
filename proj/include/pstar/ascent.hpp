#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "pstar/mean_field.hpp"
#include "pstar/model.hpp"

namespace pstar {

enum class Method { kMlleExact, kMple, kMfMlle };

std::string_view to_string(Method m);

/// Fixed-step gradient ascent settings shared by all three estimators.
struct GradientAscentConfig {
  double step = 1e-3;
  int max_iter = 1000;
  NaturalParams init{};
  /// Stop early once the sup-norm of the gradient drops below this.
  std::optional<double> grad_tol;
  /// Record every k-th iteration; the final iteration is always recorded.
  int trace_every = 1;
  /// Components with false stay fixed at their initial value.
  std::array<bool, 3> active{true, true, true};
};

struct TraceEntry {
  int iteration = 0;
  /// Parameters after this iteration's update.
  NaturalParams theta;
  /// Gradient that produced the update, taken at the previous parameters.
  std::array<double, 3> gradient{};
  /// Objective at the previous parameters, NaN when the method does not track one.
  double objective = std::numeric_limits<double>::quiet_NaN();
  double iter_time_ms = 0.0;
};

struct EstimateResult {
  Method method = Method::kMfMlle;
  NaturalParams theta_star;
  std::vector<TraceEntry> trace;
  bool converged = false;
  int iterations = 0;
  double total_time_ms = 0.0;
  std::optional<PhaseDiagnostic> phase_at_solution;
};

/// One evaluation of the ascent direction at the current parameters.
struct AscentEval {
  std::array<double, 3> gradient{};
  double objective = std::numeric_limits<double>::quiet_NaN();
};

struct AscentGuards {
  /// Divergence if the objective decreases this many iterations in a row; 0 disables.
  int divergence_window = 0;
  /// Separation if any |theta_k| exceeds this.
  double theta_bound = std::numeric_limits<double>::infinity();
};

using AscentObjective = std::function<AscentEval(const NaturalParams& theta, int iteration)>;

/// theta <- theta + step * gradient, recording a trace. Never throws on
/// non-convergence: the caller inspects `converged`.
EstimateResult gradient_ascent(Method method, const GradientAscentConfig& cfg, const AscentObjective& eval,
                               const AscentGuards& guards = {});

void validate(const GradientAscentConfig& cfg);

}  // namespace pstar
