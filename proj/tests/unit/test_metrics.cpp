#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "homophyly/error.hpp"
#include "homophyly/generator.hpp"
#include "homophyly/metrics.hpp"
#include "oracles.hpp"

using namespace homophyly;

namespace {

std::vector<NodeId> members(std::uint64_t mask, std::size_t n) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if ((mask >> v) & 1U) out.push_back(v);
  }
  return out;
}

CommunityPartition from_labels(const std::vector<std::uint32_t>& label) {
  CommunityPartition p;
  for (NodeId v = 0; v < label.size(); ++v) {
    if (label[v] >= p.blocks.size()) p.blocks.resize(label[v] + 1);
    p.blocks[label[v]].push_back(v);
  }
  return p;
}

}  // namespace

TEST(DegreeDistribution, RegularAndStar) {
  EXPECT_EQ(degree_distribution(fixtures::cycle(6)), (Histogram{{2, 6}}));
  EXPECT_EQ(degree_distribution(fixtures::star(4)), (Histogram{{1, 4}, {4, 1}}));
  ColoredGraph g;
  g.add_node(0, true, 1);
  EXPECT_EQ(degree_distribution(g), (Histogram{{0, 1}}));
}

TEST(DegreeDistribution, RestrictedToSubset) {
  const auto g = fixtures::star(4);
  const std::vector<NodeId> x{0, 1};
  EXPECT_EQ(degree_distribution(g, x), (Histogram{{1, 1}, {4, 1}}));
}

TEST(Modularity, OneBlockIsZero) {
  const auto g = fixtures::two_cliques(4, true);
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_NEAR(modularity(g, CommunityPartition{{all}}), 0.0, 1e-15);
}

TEST(Modularity, TwoDisjointEqualCliquesIsHalf) {
  for (std::size_t k : {3u, 5u, 8u}) {
    const auto g = fixtures::two_cliques(k, false);
    EXPECT_NEAR(modularity(g, homochromatic_sets(g)), 0.5, 1e-15);
  }
}

TEST(Modularity, NoEdgesIsError) {
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(1, true, 2);
  EXPECT_THROW(modularity(g, homochromatic_sets(g)), MetricError);
}

TEST(Modularity, BadPartitionIsError) {
  const auto g = fixtures::cycle(4);
  EXPECT_THROW(modularity(g, CommunityPartition{{{0, 1}}}), InputError);
}

TEST(Modularity, MatchesPairSumOracleOnFixtures) {
  std::mt19937_64 engine(42);
  for (const auto& [name, g] : fixtures::small_graphs()) {
    SCOPED_TRACE(name);
    const std::size_t n = g.node_count();
    std::vector<std::vector<std::uint32_t>> labelings;
    labelings.push_back(std::vector<std::uint32_t>(g.colors().begin(), g.colors().end()));
    labelings.push_back(std::vector<std::uint32_t>(n, 0));
    std::vector<std::uint32_t> singletons(n);
    std::iota(singletons.begin(), singletons.end(), 0);
    labelings.push_back(singletons);
    for (int r = 0; r < 20; ++r) {
      std::vector<std::uint32_t> lab(n);
      for (auto& l : lab) l = static_cast<std::uint32_t>(engine() % 4);
      labelings.push_back(lab);
    }
    for (const auto& lab : labelings) {
      const double q = modularity(g, from_labels(lab));
      EXPECT_NEAR(q, oracle::modularity(g, lab), 1e-14);
      EXPECT_GE(q, -0.5);
      EXPECT_LT(q, 1.0);
    }
  }
}

TEST(Conductance, FourCycleOppositeNodes) {
  const auto g = fixtures::cycle(4);
  const std::vector<NodeId> x{0, 2};
  const auto cv = cut_volume(g, x);
  EXPECT_EQ(cv.cut, 4u);
  EXPECT_EQ(cv.volume_inside, 4u);
  EXPECT_EQ(conductance(g, x), 1.0);
}

TEST(Conductance, IsolatedComponentIsZero) {
  const auto g = fixtures::two_cliques(4, false);
  const std::vector<NodeId> x{0, 1, 2, 3};
  EXPECT_EQ(conductance(g, x), 0.0);
}

TEST(Conductance, EmptyOrFullSetIsError) {
  const auto g = fixtures::cycle(4);
  EXPECT_THROW(conductance(g, {}), MetricError);
  const std::vector<NodeId> all{0, 1, 2, 3};
  EXPECT_THROW(conductance(g, all), MetricError);
}

TEST(Conductance, DuplicatesInSetIgnored) {
  const auto g = fixtures::cycle(6);
  const std::vector<NodeId> x{0, 1, 1, 0};
  const std::vector<NodeId> y{0, 1};
  EXPECT_EQ(conductance(g, x), conductance(g, y));
}

TEST(Conductance, MatchesEdgeEnumerationOnEverySubset) {
  for (const auto& [name, g] : fixtures::small_graphs()) {
    SCOPED_TRACE(name);
    const std::size_t n = g.node_count();
    ASSERT_LE(n, 12u);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      const auto x = members(mask, n);
      const auto expect = oracle::cut_of(g, mask);
      const auto got = cut_volume(g, x);
      ASSERT_EQ(got.cut, static_cast<std::size_t>(expect.cut));
      ASSERT_EQ(got.volume_inside, static_cast<std::size_t>(expect.vol_in));
      ASSERT_EQ(got.volume_outside, static_cast<std::size_t>(expect.vol_out));
      const auto smaller = std::min(expect.vol_in, expect.vol_out);
      const double phi = expect.cut == 0 ? 0.0 : static_cast<double>(expect.cut) / static_cast<double>(smaller);
      const double got_phi = conductance(g, x);
      ASSERT_EQ(got_phi, phi);
      ASSERT_GE(got_phi, 0.0);
      ASSERT_LE(got_phi, 1.0);
    }
  }
}

TEST(ConductanceRatio, DisjointCliquesIsOne) {
  const auto g = fixtures::two_cliques(5, false);
  EXPECT_EQ(conductance_ratio(g, homochromatic_sets(g)), 1.0);
}

TEST(ConductanceRatio, OneBlockIsError) {
  const auto g = fixtures::cycle(5);
  EXPECT_THROW(conductance_ratio(g, homochromatic_sets(g)), MetricError);
}

TEST(ConductanceRatio, BridgedCliquesByHand) {
  // Each K5 has volume 21 and one cut edge: theta = 1 - 1/21.
  const auto g = fixtures::two_cliques(5, true);
  EXPECT_NEAR(conductance_ratio(g, homochromatic_sets(g)), 1.0 - 1.0 / 21.0, 1e-15);
}

TEST(ConductanceRatio, InvariantUnderRelabeling) {
  GenParams p;
  p.n = 1500;
  p.d = 3;
  const auto g = generate_homophyly(p).graph;
  const double base = conductance_ratio(g, homochromatic_sets(g));

  // Reverse node ids and permute colors; seeds stay the earliest node of their color.
  const std::size_t n = g.node_count();
  const ColorId colors = g.color_bound();
  ColoredGraph h;
  std::vector<ColorId> recolor(colors);
  for (ColorId c = 0; c < colors; ++c) recolor[c] = (c * 7 + 3) % colors;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 engine(9);
  std::shuffle(order.begin(), order.end(), engine);
  std::vector<NodeId> new_id(n);
  for (NodeId i = 0; i < n; ++i) new_id[order[i]] = i;
  for (NodeId i = 0; i < n; ++i) h.add_node(recolor[g.color(order[i])], g.is_seed(order[i]), g.created_at(order[i]));
  for (const auto& [u, v] : g.edges()) h.add_edge(new_id[u], new_id[v]);
  std::vector<std::vector<NodeId>> blocks(colors);
  for (NodeId v = 0; v < n; ++v) blocks[h.color(v)].push_back(v);
  EXPECT_NEAR(conductance_ratio(h, CommunityPartition{blocks}), base, 1e-12);
}

TEST(DegreePriority, ThreeTwoOne) {
  ColoredGraph g;
  g.add_node(0, true, 1);  // center
  g.add_node(1, true, 2);
  g.add_node(2, true, 3);
  g.add_node(3, true, 4);
  const std::vector<std::pair<NodeId, int>> links{{1, 2}, {2, 3}, {3, 1}};
  NodeId next = 4;
  for (const auto& [founder, extra] : links) {
    g.add_edge(0, founder);
    for (int k = 1; k < extra; ++k) {
      g.add_node(g.color(founder), false, next + 1);
      g.add_edge(0, next++);
    }
  }
  const auto p = degree_priority(g, 0);
  ASSERT_EQ(p.length(), 3u);
  EXPECT_EQ(p.degree_at(1), 3u);
  EXPECT_EQ(p.degree_at(2), 2u);
  EXPECT_EQ(p.degree_at(3), 1u);
  EXPECT_EQ(p.counts[0].color, 2u);
  EXPECT_EQ(p.degree_at(4), 0u);
}

TEST(DegreePriority, TiesByAscendingColorAndIsolated) {
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(2, true, 2);
  g.add_node(1, true, 3);
  g.add_node(0, false, 4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  const auto p = degree_priority(g, 0);
  ASSERT_EQ(p.length(), 2u);
  EXPECT_EQ(p.counts[0].color, 1u);
  EXPECT_EQ(p.counts[1].color, 2u);
  EXPECT_EQ(degree_priority(g, 3).length(), 0u);
}

TEST(DegreePriority, SameColorOnly) {
  const auto g = fixtures::complete(5);
  const auto p = degree_priority(g, 2);
  EXPECT_EQ(p.length(), 1u);
  EXPECT_EQ(p.degree_at(1), 4u);
  EXPECT_EQ(same_color_degree(g, 2), 4u);
}

TEST(DegreePriority, ProfileSumsToDegree) {
  GenParams p;
  p.n = 3000;
  const auto g = generate_homophyly(p).graph;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto prof = degree_priority(g, v);
    std::size_t sum = 0;
    for (const auto& c : prof.counts) sum += c.count;
    ASSERT_EQ(sum, g.degree(v));
    ASSERT_GE(prof.length(), 1u);
  }
}

TEST(CommunityWidth, Examples) {
  const auto g = fixtures::two_cliques(4, false);
  const std::vector<NodeId> x{0, 1, 2, 3};
  EXPECT_EQ(community_width(g, x), 0u);
  const auto b = fixtures::two_cliques(4, true);
  EXPECT_EQ(community_width(b, x), 1u);
  const std::vector<NodeId> mixed{0, 4};
  EXPECT_THROW(community_width(b, mixed), InputError);
}

TEST(CommunityWidth, OnlySeedTouchesOutside) {
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(0, false, 2);
  g.add_node(1, true, 3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  const std::vector<NodeId> x{0, 1};
  EXPECT_EQ(community_width(g, x), 1u);
}

TEST(NodeWidth, CountsForeignNonSeedContacts) {
  // Seed 0 (color 0) links to seed 1 (color 1) and non-seeds 2 (color 1), 4 (color 2).
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(1, true, 2);
  g.add_node(1, false, 3);
  g.add_node(2, true, 4);
  g.add_node(2, false, 5);
  g.add_node(0, false, 6);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 4);
  g.add_edge(0, 5);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  EXPECT_EQ(node_width(g, 0), 2u);
  EXPECT_EQ(node_width(g, 3), 0u);
  EXPECT_EQ(node_width(g, 1), 0u);
  EXPECT_EQ(node_width(g, 5), 0u);
}

TEST(NodeWidth, NonSeedsOfGeneratedGraphsAreZero) {
  for (auto policy : {SmallCommunityPolicy::repeat_targets, SmallCommunityPolicy::attach_all_available}) {
    GenParams p;
    p.n = 3000;
    p.small_community_policy = policy;
    const auto g = generate_homophyly(p).graph;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (!g.is_seed(v)) ASSERT_EQ(node_width(g, v), 0u);
    }
  }
}

TEST(KingNode, Boundary) {
  // Seed with degree 10, runner-up with degree 5.
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(0, false, 2);
  for (int i = 0; i < 8; ++i) g.add_node(1, i == 0, static_cast<std::uint64_t>(i) + 3);
  g.add_edge(0, 1);
  for (NodeId v = 2; v < 10; ++v) g.add_edge(0, v);
  g.add_edge(0, 2);
  for (NodeId v = 2; v < 6; ++v) g.add_edge(1, v);
  const std::vector<NodeId> x{0, 1};
  const auto k = king_node_check(g, x);
  EXPECT_TRUE(k.defined);
  EXPECT_EQ(k.seed_degree, 10u);
  EXPECT_EQ(k.runner_up_degree, 5u);
  EXPECT_EQ(k.ratio, 2.0);
  EXPECT_TRUE(k.is_king);
}

TEST(KingNode, RunnerUpAboveSeedAndSingleton) {
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(0, false, 2);
  g.add_node(1, true, 3);
  g.add_node(1, false, 4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  const std::vector<NodeId> x{0, 1};
  const auto k = king_node_check(g, x);
  EXPECT_TRUE(k.defined);
  EXPECT_FALSE(k.is_king);
  EXPECT_LT(k.ratio, 1.0);
  const std::vector<NodeId> single{0};
  EXPECT_FALSE(king_node_check(g, single).defined);
}

TEST(CommunityStats, BridgedCliques) {
  const auto g = fixtures::two_cliques(4, true);
  const std::vector<NodeId> x{0, 1, 2, 3};
  const auto s = community_stats(g, 0, x);
  EXPECT_EQ(s.size, 4u);
  EXPECT_DOUBLE_EQ(s.conductance, 1.0 / 13.0);
  ASSERT_TRUE(s.internal_diameter.has_value());
  EXPECT_EQ(*s.internal_diameter, 1u);
  EXPECT_EQ(s.width, 1u);
  EXPECT_EQ(s.seed, 0u);
  EXPECT_EQ(s.seed_degree, 3u);
  EXPECT_EQ(s.runner_up_degree, 4u);
  EXPECT_FALSE(s.king.is_king);
}
