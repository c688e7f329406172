#include "potts_forge/graph.hpp"

#include <algorithm>
#include <string>

#include "potts_forge/error.hpp"

namespace potts_forge {

Graph::Graph(int n_vertices, std::span<const Edge> edges) : n_vertices_(n_vertices) {
  if (n_vertices < 1) {
    throw Error(ErrorCode::InvalidGraph, "n_vertices must be >= 1, got " + std::to_string(n_vertices));
  }
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.first < 0 || e.first >= n_vertices || e.second < 0 || e.second >= n_vertices) {
      throw Error(ErrorCode::InvalidGraph, "edge (" + std::to_string(e.first + 1) + "," +
                                               std::to_string(e.second + 1) + ") out of range");
    }
    if (e.first == e.second) {
      throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(e.first + 1));
    }
    edges_.push_back({std::min(e.first, e.second), std::max(e.first, e.second)});
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw Error(ErrorCode::InvalidGraph, "duplicate edge (" + std::to_string(dup->first + 1) + "," +
                                             std::to_string(dup->second + 1) + ")");
  }
  adjacency_.assign(static_cast<std::size_t>(n_vertices), {});
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.first)].push_back(e.second);
    adjacency_[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

int Graph::degree(int vertex) const { return static_cast<int>(neighbours(vertex).size()); }

const std::vector<int>& Graph::neighbours(int vertex) const {
  return adjacency_.at(static_cast<std::size_t>(vertex));
}

bool Graph::adjacent(int a, int b) const { return edge_index(a, b).has_value(); }

std::optional<int> Graph::edge_index(int a, int b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

std::vector<std::pair<int, int>> Graph::one_based_edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.emplace_back(e.first + 1, e.second + 1);
  return out;
}

Graph new_graph(int n_vertices, std::span<const std::pair<int, int>> one_based_edges) {
  std::vector<Edge> edges;
  edges.reserve(one_based_edges.size());
  for (auto [a, b] : one_based_edges) edges.push_back({a - 1, b - 1});
  return Graph(n_vertices, edges);
}

Graph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({5 + i, 5 + (i + 2) % 5});
    edges.push_back({i, i + 5});
  }
  return Graph(10, edges);
}

Graph complete(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidGraph, "complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back({a, b});
  return Graph(n, edges);
}

Graph path(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidGraph, "path graph needs n >= 1");
  std::vector<Edge> edges;
  for (int a = 0; a + 1 < n; ++a) edges.push_back({a, a + 1});
  return Graph(n, edges);
}

Graph cycle(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidGraph, "cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) edges.push_back({a, (a + 1) % n});
  return Graph(n, edges);
}

}  // namespace potts_forge
