#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pstar/ascent.hpp"
#include "pstar/graph.hpp"
#include "pstar/model.hpp"

namespace pstar {

/// Brute-force ground truth over all 2^C(n,2) labelled graphs.
namespace exact {

inline constexpr int kDefaultEnumerationLimit = 7;
inline constexpr int kDistributionLimit = 5;

/// Unordered pairs in the order used for edge masks: (0,1), (0,2), ..., (n-2,n-1).
std::vector<std::pair<Vertex, Vertex>> pair_order(int n);

/// Bit e of the mask is set iff pair_order(n)[e] is an edge.
std::uint64_t edge_mask(const Graph& g);
Graph graph_from_mask(int n, std::uint64_t mask);

/// Visits every labelled graph once as (edge mask, stats). Graphs are walked
/// in Gray-code order so each step flips one pair and updates the statistics
/// from change statistics instead of recounting.
void enumerate_stats(int n, const std::function<void(std::uint64_t, const SufficientStats&)>& visit,
                     int limit = kDefaultEnumerationLimit);

struct StatsBucket {
  SufficientStats stats;
  std::uint64_t multiplicity = 0;
};

/// Distinct statistic triples with their multiplicities. Memoised per n.
const std::vector<StatsBucket>& stats_histogram(int n, int limit = kDefaultEnumerationLimit);

struct PartitionResult {
  double log_partition = 0.0;
  int n = 0;
};

PartitionResult log_partition(const NaturalParams& p, int n, int limit = kDefaultEnumerationLimit);

MomentsVector exact_moments(const NaturalParams& p, int n, int limit = kDefaultEnumerationLimit);

/// Probability of every graph, indexed by edge mask. n <= 5.
std::vector<double> exact_distribution(const NaturalParams& p, int n);

/// theta . mu_hat - A(theta).
double log_likelihood(const NaturalParams& p, const MomentsVector& empirical, int n,
                      int limit = kDefaultEnumerationLimit);

/// Gradient ascent on the exact log-likelihood; the gradient is mu_hat - mu(theta).
/// Throws BoundaryMoments when an active empirical moment sits at 0 or its
/// maximum, and NonConvergence when grad_tol is set but not reached.
EstimateResult mlle_exact(const MomentsVector& empirical, int n, const GradientAscentConfig& cfg,
                          int limit = kDefaultEnumerationLimit);

}  // namespace exact
}  // namespace pstar
