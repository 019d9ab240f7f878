#pragma once

#include <array>

#include "pstar/graph.hpp"

namespace pstar {

/// (theta1, theta2, theta3) weighting edges, 2-stars and triangles:
/// P(X) = exp(theta1 E + theta2 S2 + theta3 T - A).
struct NaturalParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;

  std::array<double, 3> as_array() const { return {theta1, theta2, theta3}; }
  static NaturalParams from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

  friend bool operator==(const NaturalParams&, const NaturalParams&) = default;
};

/// Hamiltonian form H(X) = theta E + sigma S2 - alpha T, P(X) ∝ exp(-H).
struct HamiltonianParams {
  double theta = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;

  friend bool operator==(const HamiltonianParams&, const HamiltonianParams&) = default;
};

/// (theta, sigma, alpha) = (-theta1, -theta2, theta3). Throws NonFinite.
HamiltonianParams to_hamiltonian(const NaturalParams& p);
NaturalParams to_natural(const HamiltonianParams& h);

/// Unnormalized log-probability theta . stats, i.e. -H(X).
double log_weight(const NaturalParams& p, const SufficientStats& s);

double hamiltonian(const HamiltonianParams& h, const SufficientStats& s);

/// H(X with ij) - H(X without ij) from change statistics alone.
double delta_hamiltonian(const HamiltonianParams& h, const Graph& g, Vertex i, Vertex j);

/// theta . delta, the log-odds of the pair being present given the rest.
inline double dot(const NaturalParams& p, const ChangeStats& c) {
  return p.theta1 * static_cast<double>(c.d_edges) + p.theta2 * static_cast<double>(c.d_two_stars) +
         p.theta3 * static_cast<double>(c.d_triangles);
}

}  // namespace pstar

namespace pstar {

/// Expected (or empirical mean) edge, 2-star and triangle counts.
struct MomentsVector {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;

  std::array<double, 3> as_array() const { return {mu1, mu2, mu3}; }
  static MomentsVector from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
  static MomentsVector from_stats(const SufficientStats& s) {
    return {static_cast<double>(s.edges), static_cast<double>(s.two_stars), static_cast<double>(s.triangles)};
  }
};

}  // namespace pstar
