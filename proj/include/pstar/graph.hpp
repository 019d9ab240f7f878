#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace pstar {

using Vertex = int;
using Count = std::int64_t;

/// Edge, 2-star and triangle counts of a graph. The 2-star count is
/// sum_i C(deg(i), 2), so its maximum is n * C(n-1, 2).
struct SufficientStats {
  Count edges = 0;
  Count two_stars = 0;
  Count triangles = 0;

  friend bool operator==(const SufficientStats&, const SufficientStats&) = default;

  SufficientStats& operator+=(const SufficientStats& o) {
    edges += o.edges;
    two_stars += o.two_stars;
    triangles += o.triangles;
    return *this;
  }
  SufficientStats& operator-=(const SufficientStats& o) {
    edges -= o.edges;
    two_stars -= o.two_stars;
    triangles -= o.triangles;
    return *this;
  }
  friend SufficientStats operator+(SufficientStats a, const SufficientStats& b) { return a += b; }
  friend SufficientStats operator-(SufficientStats a, const SufficientStats& b) { return a -= b; }
};

/// Difference statistics for one pair: stats with the edge present minus
/// stats with it absent. Independent of the current state of the pair.
struct ChangeStats {
  Count d_edges = 1;
  Count d_two_stars = 0;
  Count d_triangles = 0;

  friend bool operator==(const ChangeStats&, const ChangeStats&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Rows are stored as bitsets so
/// membership is O(1) and common-neighbour counts are a word-wise popcount.
class Graph {
 public:
  /// Empty graph on n vertices; n must be >= 1.
  explicit Graph(int n);

  int size() const noexcept { return n_; }
  Count edge_count() const noexcept { return edges_; }

  bool has_edge(Vertex i, Vertex j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }
  int degree(Vertex i) const { return degree_[i]; }

  /// Unchecked in-place mutation; callers validate indices.
  void set_edge(Vertex i, Vertex j, bool present);
  void toggle(Vertex i, Vertex j) { set_edge(i, j, !has_edge(i, j)); }

  /// |N(i) ∩ N(j)|.
  int common_neighbors(Vertex i, Vertex j) const;

  template <typename Fn>
  void for_each_neighbor(Vertex i, Fn&& fn) const {
    const std::uint64_t* r = row(i);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits != 0) {
        fn(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Vertex> neighbors(Vertex i) const;

  /// Edges as (i, j) with i < j, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  const std::uint64_t* row(Vertex i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }
  std::uint64_t* row(Vertex i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
  std::vector<int> degree_;
  Count edges_ = 0;
};

/// Builds a graph from a square 0/1 matrix, rejecting non-square input,
/// asymmetric entries and a nonzero diagonal.
Graph validate_graph(const std::vector<std::vector<int>>& entries);

/// Throws VertexOutOfRange unless 0 <= i < n.
void check_vertex(const Graph& g, Vertex i);
/// Range check on both endpoints, then SelfLoop if i == j.
void check_pair(const Graph& g, Vertex i, Vertex j);

int degree(const Graph& g, Vertex i);

SufficientStats suff_stats(const Graph& g);

ChangeStats change_stats(const Graph& g, Vertex i, Vertex j);

/// Copy of g with pair (i, j) flipped.
Graph toggle_edge(const Graph& g, Vertex i, Vertex j);

/// Maxima of the three counts on n vertices: C(n,2), n*C(n-1,2), C(n,3).
SufficientStats max_stats(int n);

/// Number of unordered pairs C(n, 2).
inline Count num_pairs(int n) { return static_cast<Count>(n) * (n - 1) / 2; }

}  // namespace pstar
