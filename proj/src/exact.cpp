#include "pstar/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "pstar/error.hpp"

namespace pstar::exact {

namespace {

void require_enumerable(int n, int limit) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  // masks are 64-bit, so C(n,2) <= 63 regardless of the requested limit
  if (n > limit || num_pairs(n) > 63) {
    throw Error(ErrorCode::kTooLarge,
                "n = " + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limit));
  }
}

struct WeightedSums {
  double max_exponent = 0.0;
  double total = 0.0;  // sum of multiplicity * exp(exponent - max)
  std::array<double, 3> first{};
};

WeightedSums weighted_sums(const NaturalParams& p, const std::vector<StatsBucket>& hist) {
  WeightedSums w;
  w.max_exponent = -std::numeric_limits<double>::infinity();
  for (const StatsBucket& b : hist) w.max_exponent = std::max(w.max_exponent, log_weight(p, b.stats));
  for (const StatsBucket& b : hist) {
    const double wt = static_cast<double>(b.multiplicity) * std::exp(log_weight(p, b.stats) - w.max_exponent);
    w.total += wt;
    w.first[0] += wt * static_cast<double>(b.stats.edges);
    w.first[1] += wt * static_cast<double>(b.stats.two_stars);
    w.first[2] += wt * static_cast<double>(b.stats.triangles);
  }
  return w;
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> pair_order(int n) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(static_cast<std::size_t>(num_pairs(n)));
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::uint64_t edge_mask(const Graph& g) {
  if (num_pairs(g.size()) > 64) throw Error(ErrorCode::kTooLarge, "graph too large for a 64-bit edge mask");
  std::uint64_t mask = 0;
  int e = 0;
  for (auto [i, j] : pair_order(g.size())) {
    if (g.has_edge(i, j)) mask |= std::uint64_t{1} << e;
    ++e;
  }
  return mask;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
  if (num_pairs(n) > 64) throw Error(ErrorCode::kTooLarge, "graph too large for a 64-bit edge mask");
  Graph g(n);
  int e = 0;
  for (auto [i, j] : pair_order(n)) {
    if ((mask >> e) & 1u) g.set_edge(i, j, true);
    ++e;
  }
  return g;
}

void enumerate_stats(int n, const std::function<void(std::uint64_t, const SufficientStats&)>& visit, int limit) {
  require_enumerable(n, limit);
  const auto pairs = pair_order(n);
  const std::uint64_t count = std::uint64_t{1} << pairs.size();
  Graph g(n);
  SufficientStats s;
  visit(0, s);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int e = std::countr_zero(k);
    const auto [i, j] = pairs[e];
    const ChangeStats c = change_stats(g, i, j);
    const SufficientStats delta{c.d_edges, c.d_two_stars, c.d_triangles};
    if (g.has_edge(i, j)) {
      s -= delta;
    } else {
      s += delta;
    }
    g.toggle(i, j);
    gray ^= std::uint64_t{1} << e;
    visit(gray, s);
  }
}

const std::vector<StatsBucket>& stats_histogram(int n, int limit) {
  require_enumerable(n, limit);
  static std::mutex mu;
  static std::map<int, std::vector<StatsBucket>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::map<std::tuple<Count, Count, Count>, std::uint64_t> counts;
  enumerate_stats(
      n, [&](std::uint64_t, const SufficientStats& s) { ++counts[{s.edges, s.two_stars, s.triangles}]; }, limit);
  std::vector<StatsBucket> hist;
  hist.reserve(counts.size());
  for (const auto& [key, mult] : counts) {
    hist.push_back({{std::get<0>(key), std::get<1>(key), std::get<2>(key)}, mult});
  }
  return cache.emplace(n, std::move(hist)).first->second;
}

PartitionResult log_partition(const NaturalParams& p, int n, int limit) {
  to_hamiltonian(p);
  const WeightedSums w = weighted_sums(p, stats_histogram(n, limit));
  return {w.max_exponent + std::log(w.total), n};
}

MomentsVector exact_moments(const NaturalParams& p, int n, int limit) {
  to_hamiltonian(p);
  const WeightedSums w = weighted_sums(p, stats_histogram(n, limit));
  return {w.first[0] / w.total, w.first[1] / w.total, w.first[2] / w.total};
}

std::vector<double> exact_distribution(const NaturalParams& p, int n) {
  require_enumerable(n, kDistributionLimit);
  const double a = log_partition(p, n).log_partition;
  std::vector<double> table(std::size_t{1} << num_pairs(n));
  enumerate_stats(
      n, [&](std::uint64_t mask, const SufficientStats& s) { table[mask] = std::exp(log_weight(p, s) - a); },
      kDistributionLimit);
  return table;
}

double log_likelihood(const NaturalParams& p, const MomentsVector& empirical, int n, int limit) {
  const auto th = p.as_array();
  const auto mu = empirical.as_array();
  return th[0] * mu[0] + th[1] * mu[1] + th[2] * mu[2] - log_partition(p, n, limit).log_partition;
}

EstimateResult mlle_exact(const MomentsVector& empirical, int n, const GradientAscentConfig& cfg, int limit) {
  require_enumerable(n, limit);
  validate(cfg);
  const auto mu_hat = empirical.as_array();
  const auto upper = MomentsVector::from_stats(max_stats(n)).as_array();
  for (int c = 0; c < 3; ++c) {
    if (!cfg.active[c]) continue;
    if (!(mu_hat[c] > 0.0 && mu_hat[c] < upper[c])) {
      throw Error(ErrorCode::kBoundaryMoments, "empirical moment " + std::to_string(c + 1) + " = " +
                                                   std::to_string(mu_hat[c]) + " lies on the boundary [0, " +
                                                   std::to_string(upper[c]) + "]; the MLE diverges");
    }
  }

  const auto& hist = stats_histogram(n, limit);
  const auto eval = [&](const NaturalParams& theta, int) {
    const WeightedSums w = weighted_sums(theta, hist);
    const auto th = theta.as_array();
    AscentEval e;
    double dot_mu = 0.0;
    for (int c = 0; c < 3; ++c) {
      e.gradient[c] = mu_hat[c] - w.first[c] / w.total;
      dot_mu += th[c] * mu_hat[c];
    }
    e.objective = dot_mu - (w.max_exponent + std::log(w.total));
    return e;
  };
  EstimateResult result = gradient_ascent(Method::kMlleExact, cfg, eval);
  if (cfg.grad_tol && !result.converged) {
    throw Error(ErrorCode::kNonConvergence, "gradient norm above " + std::to_string(*cfg.grad_tol) + " after " +
                                                std::to_string(result.iterations) + " iterations");
  }
  return result;
}

}  // namespace pstar::exact
