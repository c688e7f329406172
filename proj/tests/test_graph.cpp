#include <gtest/gtest.h>

#include "oracles.hpp"
#include "potts_forge/error.hpp"
#include "potts_forge/graph.hpp"
#include "potts_forge/io.hpp"
#include "potts_forge/model_symmetry.hpp"

using namespace potts_forge;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Graph, TriangleFromOneBased) {
  const std::vector<std::pair<int, int>> e{{1, 2}, {2, 3}, {1, 3}};
  const Graph g = new_graph(3, e);
  EXPECT_EQ(g.n_edges(), 3);
  EXPECT_EQ(g, complete(3));
}

TEST(Graph, EdgesAreCanonical) {
  const std::vector<std::pair<int, int>> e{{2, 1}};
  const Graph g = new_graph(2, e);
  ASSERT_EQ(g.n_edges(), 1);
  EXPECT_EQ(g.one_based_edges().front(), (std::pair<int, int>{1, 2}));
  EXPECT_EQ(g.edge(0).first, 0);
  EXPECT_EQ(g.edge(0).second, 1);
}

TEST(Graph, RejectsBadEdges) {
  const std::vector<std::pair<int, int>> loop{{1, 1}}, dup{{1, 2}, {2, 1}}, range{{1, 3}};
  EXPECT_EQ(code_of([&] { new_graph(2, loop); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(code_of([&] { new_graph(2, dup); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(code_of([&] { new_graph(2, range); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(code_of([&] { new_graph(0, {}); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(code_of([&] { complete(0); }), ErrorCode::InvalidGraph);
}

TEST(Graph, EdgeListSorted) {
  const std::vector<std::pair<int, int>> e{{3, 4}, {1, 4}, {2, 3}, {1, 2}};
  const Graph g = new_graph(4, e);
  for (int k = 0; k < g.n_edges(); ++k) {
    EXPECT_LT(g.edge(k).first, g.edge(k).second);
    if (k > 0) {
      EXPECT_LT(g.edge(k - 1), g.edge(k));
    }
  }
}

TEST(Graph, Petersen) {
  const Graph g = petersen();
  EXPECT_EQ(g.n_vertices(), 10);
  EXPECT_EQ(g.n_edges(), 15);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3);
  EXPECT_EQ(oracle::girth(g), 5);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(g.adjacent(i, i + 5));
  EXPECT_EQ(graph_automorphisms(g, 1000).size(), 120u);
}

TEST(Graph, Families) {
  EXPECT_EQ(complete(1).n_edges(), 0);
  EXPECT_EQ(complete(3).n_edges(), 3);
  EXPECT_EQ(complete(4).n_edges(), 6);
  EXPECT_EQ(path(4).n_edges(), 3);
  EXPECT_EQ(cycle(4).n_edges(), 4);
  EXPECT_EQ(oracle::girth(path(4)), 0);
  EXPECT_EQ(oracle::girth(cycle(4)), 4);
  EXPECT_EQ(oracle::girth(complete(4)), 3);
  EXPECT_EQ(graph_automorphisms(cycle(5), 100).size(), 10u);
  EXPECT_EQ(graph_automorphisms(complete(4), 100).size(), 24u);
}

TEST(Graph, JsonRoundTrip) {
  for (const Graph& g : {petersen(), complete(4), path(3), complete(1)}) {
    EXPECT_EQ(parse_graph(graph_to_json(g)), g);
  }
}
