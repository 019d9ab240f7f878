#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pstar/ascent.hpp"
#include "pstar/exact.hpp"
#include "pstar/mean_field.hpp"
#include "pstar/model.hpp"
#include "pstar/sampler.hpp"

namespace pstar {

/// Average per-sample counts. Throws EmptyDataset.
MomentsVector empirical_moments(const SampleSet& data);
MomentsVector empirical_moments(std::span<const SufficientStats> stats);

/// Change statistics for every sample and unordered pair, computed once and
/// reused by every pseudo-likelihood evaluation.
struct PrecomputedDeltas {
  struct Row {
    std::int32_t d_two_stars = 0;
    std::int32_t d_triangles = 0;
    std::uint8_t present = 0;
  };

  int n = 0;
  std::int64_t samples = 0;
  /// Sample-major, pairs in (0,1), (0,2), ... order within a sample.
  std::vector<Row> rows;

  std::size_t size() const { return rows.size(); }
  const Row& at(std::int64_t sample, std::int64_t pair) const {
    return rows[static_cast<std::size_t>(sample * num_pairs(n) + pair)];
  }
};

PrecomputedDeltas precompute_deltas(const SampleSet& data);
PrecomputedDeltas precompute_deltas(std::span<const Graph> graphs);

/// (1/N) sum_k sum_{i<j} [x z - log(1 + e^z)], z = theta . delta.
double log_pseudo_likelihood(const NaturalParams& p, const PrecomputedDeltas& d);

std::array<double, 3> pl_gradient(const NaturalParams& p, const PrecomputedDeltas& d);

struct PseudoLikelihoodEval {
  double value = 0.0;
  std::array<double, 3> gradient{};
};

/// Value and gradient in one pass over the cache.
PseudoLikelihoodEval pl_value_and_gradient(const NaturalParams& p, const PrecomputedDeltas& d);

/// Gradient ascent on the log-pseudo-likelihood. Throws Separation when every
/// observed pair has the same value or the parameters run off to infinity,
/// and Divergence when the objective keeps decreasing.
EstimateResult mple(const SampleSet& data, const GradientAscentConfig& cfg);
EstimateResult mple(const PrecomputedDeltas& deltas, const GradientAscentConfig& cfg);

/// Gradient ascent with mean-field moments: theta += step * (mu_hat - mu_MF(theta)).
/// Newton is warm-started from the previous iteration's (p, q).
EstimateResult mf_mlle(const MomentsVector& moments, int n, const GradientAscentConfig& cfg,
                       const NewtonConfig& ncfg = {});

/// Exact-enumeration MLLE on the dataset's empirical moments.
EstimateResult mlle_exact_from_data(const SampleSet& data, const GradientAscentConfig& cfg,
                                    int limit = exact::kDefaultEnumerationLimit);

}  // namespace pstar
