#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.hpp"
#include "homophyly/diameter.hpp"
#include "homophyly/generator.hpp"
#include "homophyly/kernels.hpp"
#include "oracles.hpp"

using namespace homophyly;

namespace {

std::vector<ColoredGraph> generated_graphs() {
  std::vector<ColoredGraph> out;
  for (auto policy : {SmallCommunityPolicy::repeat_targets, SmallCommunityPolicy::attach_all_available}) {
    GenParams p;
    p.n = 4000;
    p.rng_seed = 11;
    p.small_community_policy = policy;
    out.push_back(generate_homophyly(p).graph);
  }
  out.push_back(generate_pa(3000, 3, 2));
  out.push_back(generate_er(3000, 4000, 2));
  return out;
}

}  // namespace

TEST(Diameter, CompleteAndPath) {
  const auto k = diameter(fixtures::complete(6));
  EXPECT_TRUE(k.connected);
  EXPECT_EQ(k.lower, 1u);
  EXPECT_EQ(k.upper, 1u);
  const auto p = diameter(fixtures::path(5));
  EXPECT_EQ(p.lower, 4u);
  EXPECT_TRUE(p.exact());
  EXPECT_EQ(diameter(fixtures::cycle(9)).lower, 4u);
}

TEST(Diameter, DisconnectedFlag) {
  const auto r = diameter(fixtures::two_cliques(4, false));
  EXPECT_FALSE(r.connected);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_EQ(r.lower, 1u);
}

TEST(Diameter, MatchesFloydWarshallOnFixtures) {
  for (const auto& [name, g] : fixtures::small_graphs()) {
    SCOPED_TRACE(name);
    const int expect = oracle::diameter(g);
    const auto r = diameter(g);
    if (expect < 0) {
      EXPECT_FALSE(r.connected);
      continue;
    }
    EXPECT_TRUE(r.connected);
    EXPECT_EQ(r.lower, static_cast<std::size_t>(expect));
    EXPECT_EQ(r.upper, static_cast<std::size_t>(expect));
  }
}

TEST(Diameter, MatchesFloydWarshallOnMediumGraphs) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    GenParams p;
    p.n = 300;
    p.d = 2;
    p.rng_seed = seed;
    const auto g = generate_homophyly(p).graph;
    EXPECT_EQ(diameter(g).lower, static_cast<std::size_t>(oracle::diameter(g)));
  }
}

TEST(Diameter, BoundsBracketExactValue) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GenParams p;
    p.n = 5000;
    p.rng_seed = seed;
    const auto g = generate_homophyly(p).graph;
    const auto exact = diameter(g);
    ASSERT_TRUE(exact.exact());
    for (std::size_t budget : {0u, 4u, 50u}) {
      DiameterOptions o;
      o.exact_node_limit = 10;
      o.bfs_budget = budget;
      const auto b = diameter(g, o);
      EXPECT_LE(b.lower, exact.lower);
      EXPECT_GE(b.upper, exact.upper);
      EXPECT_GE(b.upper, b.lower);
    }
  }
  // A long path makes the four-sweep bound exact.
  DiameterOptions o;
  o.exact_node_limit = 10;
  const auto r = diameter(fixtures::path(200), o);
  EXPECT_EQ(r.lower, 199u);
  EXPECT_EQ(r.upper, 199u);
}

TEST(Diameter, CommunityDiameterOfInducedSet) {
  const auto g = fixtures::two_cliques(5, true);
  const std::vector<NodeId> x{0, 1, 2, 3, 4};
  EXPECT_EQ(community_diameter(g, x).lower, 1u);
  const std::vector<NodeId> y{3, 4, 5, 6};
  EXPECT_EQ(community_diameter(g, y).lower, 3u);
  const std::vector<NodeId> z{0, 9};
  EXPECT_FALSE(community_diameter(g, z).connected);
}

TEST(Csr, CollapsesParallelEdges) {
  const Csr c(fixtures::triangle_pendant_multi());
  ASSERT_EQ(c.node_count(), 4u);
  EXPECT_EQ(std::vector<NodeId>(c.neighbors(0).begin(), c.neighbors(0).end()), (std::vector<NodeId>{1, 2}));
  const auto dist = bfs_distances(c, 3);
  EXPECT_EQ(dist, (std::vector<std::uint32_t>{2, 2, 1, 0}));
  EXPECT_EQ(bfs_distances(Csr(fixtures::two_cliques(3, false)), 0)[4], kUnreached);
}

TEST(Kernels, SerialAndParallelAgree) {
  for (const auto& g : generated_graphs()) {
    const Csr c(g);
    std::vector<NodeId> sources(std::min<std::size_t>(g.node_count(), 200));
    std::iota(sources.begin(), sources.end(), 0);
    EXPECT_EQ(kernels::serial::eccentricities(c, sources), kernels::parallel::eccentricities(c, sources));
    const auto part = homochromatic_sets(g);
    EXPECT_EQ(kernels::serial::community_stats(g, part), kernels::parallel::community_stats(g, part));
    EXPECT_EQ(kernels::serial::degree_profiles(g), kernels::parallel::degree_profiles(g));
    EXPECT_EQ(kernels::serial::node_widths(g), kernels::parallel::node_widths(g));
  }
}

TEST(Kernels, SerialMatchesScalarMetrics) {
  GenParams p;
  p.n = 2000;
  const auto g = generate_homophyly(p).graph;
  const auto part = homochromatic_sets(g);
  const auto stats = kernels::serial::community_stats(g, part);
  ASSERT_EQ(stats.size(), part.size());
  for (std::size_t c = 0; c < part.size(); ++c) {
    EXPECT_EQ(stats[c], community_stats(g, static_cast<ColorId>(c), part.blocks[c]));
  }
  const auto profiles = kernels::serial::degree_profiles(g);
  const auto widths = kernels::serial::node_widths(g);
  for (NodeId v = 0; v < g.node_count(); v += 7) {
    EXPECT_EQ(profiles[v], degree_priority(g, v));
    EXPECT_EQ(widths[v], node_width(g, v));
  }
}

TEST(Kernels, EccentricityOfPath) {
  const Csr c(fixtures::path(5));
  const std::vector<NodeId> all{0, 1, 2, 3, 4};
  EXPECT_EQ(kernels::parallel::eccentricities(c, all), (std::vector<std::uint32_t>{4, 3, 2, 3, 4}));
}
