#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "pstar/mean_field.hpp"

namespace pstar::testing {

// Direct transcription of the two self-consistency maps, kept separate from the
// library so the damped iteration below is an independent oracle.
inline std::pair<double, double> oracle_map(const HamiltonianParams& h, int n, double p, double q) {
  const double fp = 1.0 / (std::exp(h.theta - h.alpha * (n - 2) * q + 2 * h.sigma * (n - 2) * p) + 1.0);
  const double num = std::exp(-h.sigma) * (1.0 + (std::exp(h.alpha) - 1.0) * p);
  const double b = std::exp(h.theta - h.alpha * (n - 3) * q + h.sigma * (2 * n - 5) * p) + 1.0;
  return {fp, num / (b * b + num - 1.0)};
}

inline std::pair<double, double> oracle_fixed_point(const HamiltonianParams& h, int n) {
  double p = 0.5, q = 0.25;
  for (int k = 0; k < 200000; ++k) {
    const auto [fp, fq] = oracle_map(h, n, p, q);
    const double np = 0.5 * p + 0.5 * fp, nq = 0.5 * q + 0.5 * fq;
    const bool done = std::abs(np - p) < 1e-15 && std::abs(nq - q) < 1e-15;
    p = np;
    q = nq;
    if (done) break;
  }
  return {p, q};
}

inline HamiltonianParams random_high_phase(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> t(0.5, 3.0), s(-0.5, 0.5), a(-1.0, 1.0);
  for (;;) {
    const HamiltonianParams h{t(rng), s(rng) / n, a(rng) / n};
    if (find_fixed_points(h, n).phase == Phase::kHigh) return h;
  }
}

}  // namespace pstar::testing
