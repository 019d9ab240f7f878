#include "pstar/sampler.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "pstar/error.hpp"

namespace pstar {

namespace {

// splitmix64 finaliser, used to derive well-separated chain seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::pair<Vertex, Vertex> pair_from_index(int n, std::uint64_t k) {
  // row i holds pairs (i, i+1..n-1)
  Vertex i = 0;
  auto remaining = static_cast<std::uint64_t>(n - 1);
  while (k >= remaining) {
    k -= remaining;
    ++i;
    --remaining;
  }
  return {i, static_cast<Vertex>(i + 1 + k)};
}

}  // namespace

std::int64_t default_burn_in(int n) {
  const double nn = n;
  return static_cast<std::int64_t>(std::ceil(10.0 * nn * nn * std::log(nn)));
}

std::int64_t default_thinning(int n) { return static_cast<std::int64_t>(n) * n; }

ChainRng::ChainRng(std::uint64_t seed, std::uint64_t chain) : engine_(mix(mix(seed) ^ mix(chain + 1))) {}

double acceptance_prob(const NaturalParams& p, const Graph& g, Vertex i, Vertex j) {
  const double log_odds = dot(p, change_stats(g, i, j));
  const double log_ratio = g.has_edge(i, j) ? -log_odds : log_odds;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

MarkovChain::MarkovChain(const NaturalParams& p, Graph initial, ChainRng rng)
    : params_(p), graph_(std::move(initial)), stats_(suff_stats(graph_)), rng_(rng) {
  if (graph_.size() < 2) throw Error(ErrorCode::kInvalidArgument, "sampler needs n >= 2");
}

namespace {

// One Metropolis-Hastings proposal applied in place; stats, when given, track the graph.
bool metropolis_step(Graph& g, SufficientStats* stats, const NaturalParams& p, ChainRng& rng) {
  const auto [i, j] = pair_from_index(g.size(), rng.below(static_cast<std::uint64_t>(num_pairs(g.size()))));
  const int present = g.has_edge(i, j) ? 1 : 0;
  const ChangeStats c{1, (g.degree(i) - present) + (g.degree(j) - present), g.common_neighbors(i, j)};
  const double log_odds = dot(p, c);
  const double log_ratio = present ? -log_odds : log_odds;
  const double u = rng.uniform();
  if (log_ratio < 0.0 && u > std::exp(log_ratio)) return false;

  if (stats != nullptr) {
    const SufficientStats delta{c.d_edges, c.d_two_stars, c.d_triangles};
    if (present) {
      *stats -= delta;
    } else {
      *stats += delta;
    }
  }
  g.toggle(i, j);
  return true;
}

}  // namespace

bool MarkovChain::step() {
  ++steps_;
  const bool accepted = metropolis_step(graph_, &stats_, params_, rng_);
  if (accepted) ++accepted_;
  return accepted;
}

Graph mh_step(const Graph& state, const NaturalParams& p, ChainRng& rng) {
  if (state.size() < 2) throw Error(ErrorCode::kInvalidArgument, "sampler needs n >= 2");
  Graph next = state;
  metropolis_step(next, nullptr, p, rng);
  return next;
}

Graph initial_graph(const SamplerConfig& cfg, ChainRng& rng) {
  return std::visit(
      [&](const auto& init) -> Graph {
        using T = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<T, InitEmpty>) {
          return Graph(cfg.n);
        } else if constexpr (std::is_same_v<T, InitRandom>) {
          Graph g(cfg.n);
          for (Vertex i = 0; i < cfg.n; ++i) {
            for (Vertex j = i + 1; j < cfg.n; ++j) {
              if (rng.uniform() < init.p0) g.set_edge(i, j, true);
            }
          }
          return g;
        } else {
          if (init.graph.size() != cfg.n) {
            throw Error(ErrorCode::kInvalidArgument, "initial graph has " + std::to_string(init.graph.size()) +
                                                         " vertices, config says " + std::to_string(cfg.n));
          }
          return init.graph;
        }
      },
      cfg.initial);
}

void validate(const SamplerConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorCode::kInvalidArgument, "sampler needs n >= 2");
  if (cfg.burn_in && *cfg.burn_in < 0) throw Error(ErrorCode::kInvalidArgument, "burn_in must be >= 0");
  if (cfg.thinning && *cfg.thinning < 1) throw Error(ErrorCode::kInvalidArgument, "thinning must be >= 1");
  if (cfg.num_samples < 1) throw Error(ErrorCode::kInvalidArgument, "num_samples must be >= 1");
  if (const auto* r = std::get_if<InitRandom>(&cfg.initial); r && !(r->p0 >= 0.0 && r->p0 <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "random initial density must lie in [0,1]");
  }
}

void run_chain_visit(const NaturalParams& p, const SamplerConfig& cfg,
                     const std::function<void(std::int64_t, const MarkovChain&)>& keep, std::uint64_t chain) {
  validate(cfg);
  to_hamiltonian(p);
  const std::int64_t burn = cfg.burn_in.value_or(default_burn_in(cfg.n));
  const std::int64_t thin = cfg.thinning.value_or(default_thinning(cfg.n));
  ChainRng rng(cfg.seed, chain);
  Graph start = initial_graph(cfg, rng);
  MarkovChain mc(p, std::move(start), rng);
  for (std::int64_t t = 0; t < burn; ++t) mc.step();
  for (std::int64_t k = 0; k < cfg.num_samples; ++k) {
    for (std::int64_t t = 0; t < thin; ++t) mc.step();
    keep(k, mc);
  }
}

SampleSet run_chain(const NaturalParams& p, const SamplerConfig& cfg) { return run_chains(p, cfg, 1); }

SampleSet run_chains(const NaturalParams& p, const SamplerConfig& cfg, int chains) {
  validate(cfg);
  if (chains < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one chain");

  std::vector<SampleSet> parts(chains);
  const auto work = [&](int c) {
    SampleSet& part = parts[c];
    part.graphs.reserve(static_cast<std::size_t>(cfg.num_samples));
    part.stats.reserve(static_cast<std::size_t>(cfg.num_samples));
    run_chain_visit(
        p, cfg,
        [&](std::int64_t, const MarkovChain& mc) {
          part.graphs.push_back(mc.state());
          part.stats.push_back(mc.stats());
        },
        static_cast<std::uint64_t>(c));
  };
  if (chains == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    std::vector<std::exception_ptr> errors(chains);
    for (int c = 0; c < chains; ++c) {
      threads.emplace_back([&, c] {
        try {
          work(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    threads.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SampleSet out;
  out.n = cfg.n;
  out.params = p;
  out.burn_in = cfg.burn_in.value_or(default_burn_in(cfg.n));
  out.thinning = cfg.thinning.value_or(default_thinning(cfg.n));
  out.seed = cfg.seed;
  out.chains = chains;
  for (auto& part : parts) {
    for (std::size_t k = 0; k < part.graphs.size(); ++k) {
      out.graphs.push_back(std::move(part.graphs[k]));
      out.stats.push_back(part.stats[k]);
    }
  }
  return out;
}

}  // namespace pstar
