#include "pstar/estimators.hpp"

#include <cmath>
#include <string>

#include "pstar/error.hpp"

namespace pstar {

namespace {

// Separation guard for MPLE; genuine estimates are orders of magnitude smaller.
constexpr double kThetaBound = 1e3;
constexpr int kDivergenceWindow = 10;

double log1p_exp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

MomentsVector empirical_moments(std::span<const SufficientStats> stats) {
  if (stats.empty()) throw Error(ErrorCode::kEmptyDataset, "no samples");
  SufficientStats total;
  for (const auto& s : stats) total += s;
  const double n = static_cast<double>(stats.size());
  return {static_cast<double>(total.edges) / n, static_cast<double>(total.two_stars) / n,
          static_cast<double>(total.triangles) / n};
}

MomentsVector empirical_moments(const SampleSet& data) { return empirical_moments(std::span(data.stats)); }

PrecomputedDeltas precompute_deltas(std::span<const Graph> graphs) {
  if (graphs.empty()) throw Error(ErrorCode::kEmptyDataset, "no samples");
  PrecomputedDeltas d;
  d.n = graphs.front().size();
  d.samples = static_cast<std::int64_t>(graphs.size());
  d.rows.reserve(static_cast<std::size_t>(d.samples * num_pairs(d.n)));
  for (const Graph& g : graphs) {
    if (g.size() != d.n) throw Error(ErrorCode::kInvalidArgument, "samples differ in vertex count");
    for (Vertex i = 0; i < d.n; ++i) {
      for (Vertex j = i + 1; j < d.n; ++j) {
        const ChangeStats c = change_stats(g, i, j);
        d.rows.push_back({static_cast<std::int32_t>(c.d_two_stars), static_cast<std::int32_t>(c.d_triangles),
                          static_cast<std::uint8_t>(g.has_edge(i, j) ? 1 : 0)});
      }
    }
  }
  return d;
}

PrecomputedDeltas precompute_deltas(const SampleSet& data) { return precompute_deltas(std::span(data.graphs)); }

PseudoLikelihoodEval pl_value_and_gradient(const NaturalParams& p, const PrecomputedDeltas& d) {
  if (d.samples < 1) throw Error(ErrorCode::kEmptyDataset, "no samples");
  PseudoLikelihoodEval out;
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, value = 0.0;
  for (const auto& row : d.rows) {
    const double d2 = row.d_two_stars;
    const double d3 = row.d_triangles;
    const double z = p.theta1 + p.theta2 * d2 + p.theta3 * d3;
    const double x = row.present;
    value += x * z - log1p_exp(z);
    const double resid = x - sigmoid(z);
    g1 += resid;
    g2 += resid * d2;
    g3 += resid * d3;
  }
  const double inv = 1.0 / static_cast<double>(d.samples);
  out.value = value * inv;
  out.gradient = {g1 * inv, g2 * inv, g3 * inv};
  return out;
}

double log_pseudo_likelihood(const NaturalParams& p, const PrecomputedDeltas& d) {
  return pl_value_and_gradient(p, d).value;
}

std::array<double, 3> pl_gradient(const NaturalParams& p, const PrecomputedDeltas& d) {
  return pl_value_and_gradient(p, d).gradient;
}

EstimateResult mple(const PrecomputedDeltas& deltas, const GradientAscentConfig& cfg) {
  validate(cfg);
  if (deltas.samples < 1 || deltas.rows.empty()) throw Error(ErrorCode::kEmptyDataset, "no samples");
  std::size_t ones = 0;
  for (const auto& row : deltas.rows) ones += row.present;
  if (ones == 0 || ones == deltas.rows.size()) {
    throw Error(ErrorCode::kSeparation, ones == 0 ? "every observed pair is absent; theta1 diverges to -inf"
                                                  : "every observed pair is present; theta1 diverges to +inf");
  }

  const auto eval = [&](const NaturalParams& theta, int) {
    const PseudoLikelihoodEval e = pl_value_and_gradient(theta, deltas);
    return AscentEval{e.gradient, e.value};
  };
  AscentGuards guards;
  guards.divergence_window = kDivergenceWindow;
  guards.theta_bound = kThetaBound;
  return gradient_ascent(Method::kMple, cfg, eval, guards);
}

EstimateResult mple(const SampleSet& data, const GradientAscentConfig& cfg) {
  return mple(precompute_deltas(data), cfg);
}

EstimateResult mf_mlle(const MomentsVector& moments, int n, const GradientAscentConfig& cfg,
                       const NewtonConfig& ncfg) {
  if (n < 3) throw Error(ErrorCode::kBadDimension, "mean-field estimation needs n >= 3");
  validate(cfg);
  const auto mu_hat = moments.as_array();
  const auto upper = MomentsVector::from_stats(max_stats(n)).as_array();
  for (int c = 0; c < 3; ++c) {
    if (!(mu_hat[c] >= 0.0 && mu_hat[c] <= upper[c])) {
      throw Error(ErrorCode::kInvalidArgument, "moment " + std::to_string(c + 1) + " = " + std::to_string(mu_hat[c]) +
                                                   " outside [0, " + std::to_string(upper[c]) + "]");
    }
  }

  NewtonConfig warm = ncfg;
  const auto eval = [&](const NaturalParams& theta, int k) {
    MFState s;
    try {
      s = mf_state(to_hamiltonian(theta), n, warm);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLowTemperatureSuspected) throw;
      throw Error(ErrorCode::kLowTemperatureEncountered,
                  "mean-field solve failed at iteration " + std::to_string(k) + ": " + e.what());
    }
    warm.initial = std::pair{s.p, s.q};
    const auto mu = scale_moments(s, n).as_array();
    AscentEval out;
    for (int c = 0; c < 3; ++c) out.gradient[c] = mu_hat[c] - mu[c];
    return out;
  };
  EstimateResult result = gradient_ascent(Method::kMfMlle, cfg, eval);
  result.phase_at_solution = find_fixed_points(to_hamiltonian(result.theta_star), n);
  if (cfg.grad_tol && !result.converged) {
    throw Error(ErrorCode::kMaxIterExceeded, "moment mismatch above " + std::to_string(*cfg.grad_tol) + " after " +
                                                 std::to_string(result.iterations) + " iterations");
  }
  return result;
}

EstimateResult mlle_exact_from_data(const SampleSet& data, const GradientAscentConfig& cfg, int limit) {
  if (data.size() == 0) throw Error(ErrorCode::kEmptyDataset, "no samples");
  const int n = data.graphs.front().size();
  if (n > limit) {
    throw Error(ErrorCode::kTooLarge, "n = " + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limit));
  }
  return exact::mlle_exact(empirical_moments(data), n, cfg, limit);
}

}  // namespace pstar
