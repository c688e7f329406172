#pragma once

#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace potts_forge {

/// Undirected edge between 0-based vertices, stored with first < second.
struct Edge {
  int first = 0;
  int second = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite undirected simple graph.
///
/// Vertices are 0-based inside the library; JSON files and the CLI use
/// 1-based indices. Edges are kept canonical (first < second) and sorted
/// lexicographically, so edge index k (and therefore the meaning of J_k) is
/// a pure function of the edge set.
class Graph {
 public:
  /// Builds from 0-based endpoint pairs. Throws Error(InvalidGraph) on
  /// self-loops, duplicates, out-of-range endpoints or n_vertices < 1.
  Graph(int n_vertices, std::span<const Edge> edges);

  int n_vertices() const noexcept { return n_vertices_; }
  int n_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int k) const { return edges_.at(static_cast<std::size_t>(k)); }

  int degree(int vertex) const;
  const std::vector<int>& neighbours(int vertex) const;
  bool adjacent(int a, int b) const;
  /// Index of the edge joining a and b (either order), if any.
  std::optional<int> edge_index(int a, int b) const;

  /// Edge list as 1-based pairs, in edge-index order.
  std::vector<std::pair<int, int>> one_based_edges() const;

  friend bool operator==(const Graph& lhs, const Graph& rhs) {
    return lhs.n_vertices_ == rhs.n_vertices_ && lhs.edges_ == rhs.edges_;
  }

 private:
  int n_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Builds a graph from 1-based endpoint pairs (the external convention).
Graph new_graph(int n_vertices, std::span<const std::pair<int, int>> one_based_edges);

/// Petersen graph: outer 5-cycle on vertices 1-5, inner pentagram on 6-10 and
/// spokes (i, i+5), all 1-based.
Graph petersen();

Graph complete(int n);
Graph path(int n);
Graph cycle(int n);

}  // namespace potts_forge
