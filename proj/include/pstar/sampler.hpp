#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "pstar/graph.hpp"
#include "pstar/model.hpp"

namespace pstar {

struct InitEmpty {};
struct InitRandom {
  double p0 = 0.5;
};
struct InitGiven {
  Graph graph;
};
using ChainInit = std::variant<InitEmpty, InitRandom, InitGiven>;

struct SamplerConfig {
  int n = 10;
  /// Steps discarded before the first kept sample; default ceil(10 n^2 log n).
  std::optional<std::int64_t> burn_in;
  /// Steps between kept samples; default n^2.
  std::optional<std::int64_t> thinning;
  std::int64_t num_samples = 1;
  std::uint64_t seed = 0;
  ChainInit initial = InitRandom{};
};

std::int64_t default_burn_in(int n);
std::int64_t default_thinning(int n);

struct SampleSet {
  int n = 0;
  std::vector<Graph> graphs;
  std::vector<SufficientStats> stats;
  /// Provenance.
  NaturalParams params;
  std::int64_t burn_in = 0;
  std::int64_t thinning = 0;
  std::uint64_t seed = 0;
  int chains = 1;

  std::size_t size() const { return graphs.size(); }
};

/// 64-bit generator for one chain. Chain k of a run seeded with s uses the
/// stream derived from (s, k), so chains are reproducible and independent of
/// how many run in parallel.
class ChainRng {
 public:
  explicit ChainRng(std::uint64_t seed, std::uint64_t chain = 0);

  double uniform() { return unit_(engine_); }
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// min{1, P(toggled) / P(g)} via change statistics.
double acceptance_prob(const NaturalParams& p, const Graph& g, Vertex i, Vertex j);

/// Metropolis-Hastings chain with uniform proposals over unordered pairs.
/// The sufficient statistics are maintained incrementally.
class MarkovChain {
 public:
  MarkovChain(const NaturalParams& p, Graph initial, ChainRng rng);

  /// One proposal; returns true if the toggle was accepted.
  bool step();

  const Graph& state() const { return graph_; }
  const SufficientStats& stats() const { return stats_; }
  std::int64_t accepted() const { return accepted_; }
  std::int64_t steps() const { return steps_; }

 private:
  NaturalParams params_;
  Graph graph_;
  SufficientStats stats_;
  ChainRng rng_;
  std::int64_t accepted_ = 0;
  std::int64_t steps_ = 0;
};

/// Single step on a bare graph, for callers that hold their own state.
Graph mh_step(const Graph& state, const NaturalParams& p, ChainRng& rng);

Graph initial_graph(const SamplerConfig& cfg, ChainRng& rng);

void validate(const SamplerConfig& cfg);

/// Runs burn_in + thinning * num_samples steps and calls `keep` on every
/// thinning-th state after burn-in. Avoids materialising the samples.
void run_chain_visit(const NaturalParams& p, const SamplerConfig& cfg,
                     const std::function<void(std::int64_t index, const MarkovChain&)>& keep,
                     std::uint64_t chain = 0);

SampleSet run_chain(const NaturalParams& p, const SamplerConfig& cfg);

/// k independent chains, run concurrently, each producing cfg.num_samples
/// samples; results are concatenated in chain order.
SampleSet run_chains(const NaturalParams& p, const SamplerConfig& cfg, int chains);

}  // namespace pstar
