#pragma once

// Small graphs (at most 12 nodes) shared by the metric unit tests and the
// acceptance oracle check.

#include <string>
#include <utility>
#include <vector>

#include "homophyly/generator.hpp"
#include "homophyly/graph.hpp"

namespace fixtures {

using homophyly::ColoredGraph;
using homophyly::NodeId;

inline ColoredGraph two_cliques(std::size_t k, bool bridge) {
  ColoredGraph g;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < k; ++i) g.add_node(static_cast<homophyly::ColorId>(c), i == 0, c * k + i + 1);
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) g.add_edge(static_cast<NodeId>(c * k + i), static_cast<NodeId>(c * k + j));
    }
  }
  if (bridge) g.add_edge(static_cast<NodeId>(k - 1), static_cast<NodeId>(k));
  return g;
}

inline ColoredGraph cycle(std::size_t n) {
  ColoredGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node(0, i == 0, i + 1);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  return g;
}

inline ColoredGraph path(std::size_t n) {
  ColoredGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node(0, i == 0, i + 1);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return g;
}

inline ColoredGraph star(std::size_t leaves) {
  ColoredGraph g;
  g.add_node(0, true, 1);
  for (std::size_t i = 0; i < leaves; ++i) {
    g.add_node(0, false, i + 2);
    g.add_edge(0, static_cast<NodeId>(i + 1));
  }
  return g;
}

inline ColoredGraph complete(std::size_t n) {
  ColoredGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node(0, i == 0, i + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return g;
}

// Triangle 0-1-2 of color 0 with node 3 (color 1) hanging off node 2, plus a
// parallel edge 0-1.
inline ColoredGraph triangle_pendant_multi() {
  ColoredGraph g;
  g.add_node(0, true, 1);
  g.add_node(0, false, 2);
  g.add_node(0, false, 3);
  g.add_node(1, true, 4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(0, 1);
  return g;
}

inline std::vector<std::pair<std::string, ColoredGraph>> small_graphs() {
  using namespace homophyly;
  std::vector<std::pair<std::string, ColoredGraph>> out;
  out.emplace_back("two_cliques_5", two_cliques(5, false));
  out.emplace_back("two_cliques_5_bridged", two_cliques(5, true));
  out.emplace_back("two_cliques_6_bridged", two_cliques(6, true));
  out.emplace_back("cycle_4", cycle(4));
  out.emplace_back("cycle_9", cycle(9));
  out.emplace_back("path_5", path(5));
  out.emplace_back("star_6", star(6));
  out.emplace_back("complete_7", complete(7));
  out.emplace_back("triangle_pendant_multi", triangle_pendant_multi());
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (auto policy : {SmallCommunityPolicy::repeat_targets, SmallCommunityPolicy::attach_all_available}) {
      GenParams p;
      p.n = 8 + seed % 5;
      p.d = 1 + static_cast<std::uint32_t>(seed % 3);
      p.a = 0.6;
      p.rng_seed = seed;
      p.small_community_policy = policy;
      out.emplace_back("homophyly_s" + std::to_string(seed) + "_" + to_string(policy), generate_homophyly(p).graph);
    }
  }
  out.emplace_back("pa_10_2", generate_pa(10, 2, 4));
  out.emplace_back("er_12_20", generate_er(12, 20, 6));
  out.emplace_back("er_12_50", generate_er(12, 50, 7));
  return out;
}

}  // namespace fixtures
