#include "pstar/model.hpp"

#include <cmath>

#include "pstar/error.hpp"

namespace pstar {

namespace {

void require_finite(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw Error(ErrorCode::kNonFinite, "parameter vector has a non-finite component");
  }
}

}  // namespace

HamiltonianParams to_hamiltonian(const NaturalParams& p) {
  require_finite(p.theta1, p.theta2, p.theta3);
  return {-p.theta1, -p.theta2, p.theta3};
}

NaturalParams to_natural(const HamiltonianParams& h) {
  require_finite(h.theta, h.sigma, h.alpha);
  return {-h.theta, -h.sigma, h.alpha};
}

double log_weight(const NaturalParams& p, const SufficientStats& s) {
  return p.theta1 * static_cast<double>(s.edges) + p.theta2 * static_cast<double>(s.two_stars) +
         p.theta3 * static_cast<double>(s.triangles);
}

double hamiltonian(const HamiltonianParams& h, const SufficientStats& s) {
  return h.theta * static_cast<double>(s.edges) + h.sigma * static_cast<double>(s.two_stars) -
         h.alpha * static_cast<double>(s.triangles);
}

double delta_hamiltonian(const HamiltonianParams& h, const Graph& g, Vertex i, Vertex j) {
  const ChangeStats c = change_stats(g, i, j);
  return h.theta * static_cast<double>(c.d_edges) + h.sigma * static_cast<double>(c.d_two_stars) -
         h.alpha * static_cast<double>(c.d_triangles);
}

}  // namespace pstar
