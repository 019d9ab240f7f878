#include "pstar/graph.hpp"

#include <string>

#include "pstar/error.hpp"

namespace pstar {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least one vertex, got " + std::to_string(n));
  }
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
  degree_.assign(n_, 0);
}

void Graph::set_edge(Vertex i, Vertex j, bool present) {
  if (has_edge(i, j) == present) return;
  const std::uint64_t mask_j = std::uint64_t{1} << (j & 63);
  const std::uint64_t mask_i = std::uint64_t{1} << (i & 63);
  row(i)[j >> 6] ^= mask_j;
  row(j)[i >> 6] ^= mask_i;
  const int delta = present ? 1 : -1;
  degree_[i] += delta;
  degree_[j] += delta;
  edges_ += delta;
}

int Graph::common_neighbors(Vertex i, Vertex j) const {
  const std::uint64_t* a = row(i);
  const std::uint64_t* b = row(j);
  int count = 0;
  for (int w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
  return count;
}

std::vector<Vertex> Graph::neighbors(Vertex i) const {
  std::vector<Vertex> out;
  out.reserve(degree_[i]);
  for_each_neighbor(i, [&](Vertex v) { out.push_back(v); });
  return out;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (Vertex i = 0; i < n_; ++i) {
    for_each_neighbor(i, [&](Vertex j) {
      if (i < j) out.emplace_back(i, j);
    });
  }
  return out;
}

Graph validate_graph(const std::vector<std::vector<int>>& entries) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw Error(ErrorCode::kNonSquare, "matrix has no rows");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n) {
      throw Error(ErrorCode::kNonSquare, "row " + std::to_string(i) + " has " +
                                             std::to_string(entries[i].size()) + " entries, expected " +
                                             std::to_string(n));
    }
  }
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int v = entries[i][j];
      if (v != 0 && v != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not 0 or 1");
      }
    }
    if (entries[i][i] != 0) throw Error(ErrorCode::kNonzeroDiagonal, "diagonal entry " + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (entries[i][j] != entries[j][i]) {
        throw Error(ErrorCode::kAsymmetricEntry, "(" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (entries[i][j] != 0) g.set_edge(i, j, true);
    }
  }
  return g;
}

void check_vertex(const Graph& g, Vertex i) {
  if (i < 0 || i >= g.size()) {
    throw Error(ErrorCode::kVertexOutOfRange,
                "vertex " + std::to_string(i) + " not in [0," + std::to_string(g.size()) + ")");
  }
}

void check_pair(const Graph& g, Vertex i, Vertex j) {
  check_vertex(g, i);
  check_vertex(g, j);
  if (i == j) throw Error(ErrorCode::kSelfLoop, "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

int degree(const Graph& g, Vertex i) {
  check_vertex(g, i);
  return g.degree(i);
}

SufficientStats suff_stats(const Graph& g) {
  SufficientStats s;
  s.edges = g.edge_count();
  Count closed = 0;
  for (Vertex i = 0; i < g.size(); ++i) {
    const Count d = g.degree(i);
    s.two_stars += d * (d - 1) / 2;
    g.for_each_neighbor(i, [&](Vertex j) {
      if (i < j) closed += g.common_neighbors(i, j);
    });
  }
  // each triangle is seen once per edge
  s.triangles = closed / 3;
  return s;
}

ChangeStats change_stats(const Graph& g, Vertex i, Vertex j) {
  check_pair(g, i, j);
  const int present = g.has_edge(i, j) ? 1 : 0;
  ChangeStats c;
  c.d_two_stars = (g.degree(i) - present) + (g.degree(j) - present);
  c.d_triangles = g.common_neighbors(i, j);
  return c;
}

Graph toggle_edge(const Graph& g, Vertex i, Vertex j) {
  check_pair(g, i, j);
  Graph out = g;
  out.toggle(i, j);
  return out;
}

SufficientStats max_stats(int n) {
  const Count nn = n;
  return {nn * (nn - 1) / 2, nn * (nn - 1) * (nn - 2) / 2, nn * (nn - 1) * (nn - 2) / 6};
}

}  // namespace pstar
