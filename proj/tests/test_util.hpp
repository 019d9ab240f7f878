#pragma once

#include <random>
#include <vector>

#include "pstar/graph.hpp"

namespace pstar::testing {

using Matrix = std::vector<std::vector<int>>;

inline Matrix to_matrix(const Graph& g) {
  Matrix m(g.size(), std::vector<int>(g.size(), 0));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) m[i][j] = g.has_edge(i, j) ? 1 : 0;
  return m;
}

/// Triple loops straight from the definitions, independent of Graph's bitsets.
inline SufficientStats naive_stats(const Matrix& x) {
  const int n = static_cast<int>(x.size());
  SufficientStats s;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.edges += x[i][j];
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (a != c && b != c) s.two_stars += x[c][a] * x[c][b];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) s.triangles += x[i][j] * x[j][k] * x[k][i];
  return s;
}

inline Graph random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.set_edge(i, j, true);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  return g;
}

inline Graph path3() {
  Graph g(3);
  g.set_edge(0, 1, true);
  g.set_edge(1, 2, true);
  return g;
}

}  // namespace pstar::testing
