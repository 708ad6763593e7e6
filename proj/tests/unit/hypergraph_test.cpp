#include "hyperdet/hypergraph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperdet/error.hpp"
#include "test_util.hpp"

namespace hyperdet {
namespace {

using testing::complete_graph;
using testing::make_graph;
using testing::random_graph;

TEST(Hypergraph, Construction) {
  UniformHypergraph g(5, 3);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.capacity(), 10u);
  EXPECT_EQ(UniformHypergraph(3, 2).capacity(), 3u);
  EXPECT_THROW(UniformHypergraph(4, 5), ConstructionError);
  EXPECT_THROW(UniformHypergraph(400, 6, 1 << 20), ConstructionError);
}

TEST(Hypergraph, SetAndQuery) {
  UniformHypergraph g(5, 3);
  EXPECT_FALSE(g.has_edge({0, 1, 2}));
  g.set_edge({0, 1, 2}, true);
  EXPECT_TRUE(g.has_edge({0, 1, 2}));
  g.set_edge({0, 1, 2}, true);
  EXPECT_EQ(g.edge_count(), 1u);
  g.set_edge({0, 1, 2}, false);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_THROW(g.set_edge({0, 1}, true), InvalidSubsetError);
  EXPECT_THROW(g.set_edge({0, 1, 5}, true), InvalidSubsetError);
}

TEST(Hypergraph, CompleteCounts) {
  const auto g = complete_graph(5, 3);
  EXPECT_EQ(g.edge_count(), 10u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 6u);
  const auto h = complete_graph(6, 3);
  const std::vector<Vertex> s{0, 2, 3, 5};
  EXPECT_EQ(h.edges_within(s), 4u);
  const std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(h.edges_within(all), h.edge_count());
}

TEST(Hypergraph, EmptyAndPath) {
  UniformHypergraph empty(6, 3);
  EXPECT_EQ(empty.degree(2), 0u);
  const std::vector<Vertex> s{0, 1, 2, 3};
  EXPECT_EQ(empty.edges_within(s), 0u);
  const auto path = make_graph(3, 2, {{0, 1}, {1, 2}});
  EXPECT_EQ(path.degree(1), 2u);
  EXPECT_EQ(path.degree(0), 1u);
  EXPECT_THROW(path.degree(3), RangeError);
  const std::vector<Vertex> small{1};
  EXPECT_EQ(path.edges_within(small), 0u);
}

TEST(Hypergraph, HandshakeIdentity) {
  for (std::uint32_t m = 2; m <= 4; ++m) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = random_graph(11, m, 0.3, seed);
      const auto deg = g.degrees();
      EXPECT_EQ(std::accumulate(deg.begin(), deg.end(), std::uint64_t{0}), m * g.edge_count());
      for (Vertex v = 0; v < 11; ++v) EXPECT_EQ(deg[v], g.degree(v));
    }
  }
}

TEST(Hypergraph, EdgesWithinMatchesEnumeration) {
  const auto g = random_graph(9, 3, 0.4, 3);
  const std::vector<Vertex> s{1, 2, 4, 6, 8};
  std::uint64_t count = 0;
  for (const auto& e : g.edges()) {
    if (std::all_of(e.vertices().begin(), e.vertices().end(),
                    [&](Vertex v) { return std::count(s.begin(), s.end(), v); })) {
      ++count;
    }
  }
  EXPECT_EQ(g.edges_within(s), count);
}

TEST(Hypergraph, PermutationRelabels) {
  const auto g = random_graph(8, 3, 0.5, 11);
  std::vector<Vertex> perm{3, 7, 0, 5, 1, 6, 2, 4};
  const auto h = g.permuted(perm);
  EXPECT_EQ(h.edge_count(), g.edge_count());
  for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(h.degree(perm[v]), g.degree(v));
  for (const auto& e : g.edges()) {
    std::vector<Vertex> img;
    for (Vertex v : e.vertices()) img.push_back(perm[v]);
    EXPECT_TRUE(h.has_edge(SubsetKey::from_unsorted(img)));
  }
  std::vector<Vertex> bad{0, 0, 1, 2, 3, 4, 5, 6};
  EXPECT_THROW(g.permuted(bad), InvalidSubsetError);
}

TEST(EdgeList, RoundTrip) {
  const auto g = random_graph(12, 3, 0.2, 5);
  std::stringstream ss;
  write_edge_list(ss, g);
  const auto h = read_edge_list(ss);
  EXPECT_TRUE(h == g);
}

TEST(EdgeList, Format) {
  std::stringstream ss;
  write_edge_list(ss, make_graph(3, 2, {{0, 1}, {1, 2}}));
  EXPECT_EQ(ss.str(), "# hypergraph N=3 m=2\n1 2\n2 3\n");
}

TEST(EdgeList, Rejects) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  EXPECT_THROW(parse("1 2\n"), ParseError);
  EXPECT_THROW(parse("# hypergraph N=3 m=2\n1 2 3\n"), ParseError);
  EXPECT_THROW(parse("# hypergraph N=3 m=2\n1 4\n"), ParseError);
  EXPECT_THROW(parse("# hypergraph N=3 m=2\n2 1\n"), ParseError);
  EXPECT_THROW(parse("# hypergraph N=3 m=2\n1 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse("# hypergraph N=3 m=2\n0 2\n"), ParseError);
  EXPECT_EQ(parse("# hypergraph N=3 m=2\n\n1 3\n").edge_count(), 1u);
}

}  // namespace
}  // namespace hyperdet
