#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "homophyly/graph.hpp"

namespace homophyly {

class Csr;

struct DiameterOptions {
  /// Components up to this size get an exact all-pairs BFS.
  std::size_t exact_node_limit = 10000;
  /// BFS budget for bounding larger components.
  std::size_t bfs_budget = 2000;
};

struct ComponentDiameter {
  std::size_t nodes = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
};

/// Diameter bounds in hops, ignoring edge multiplicity. For a disconnected
/// target `connected` is false (the true diameter is infinite) and
/// lower/upper summarize the largest per-component values.
struct DiameterResult {
  bool connected = true;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<ComponentDiameter> components;  ///< sorted by descending size

  bool exact() const { return lower == upper; }
};

/// Exact all-pairs BFS on small components. Larger components start from a
/// four-sweep lower bound and are refined by checking eccentricities of the
/// BFS fringe levels around a central node, which tightens the upper bound
/// 2*ecc(center) level by level until the bounds meet or the budget runs out.
DiameterResult diameter(const Csr& g, const DiameterOptions& options = {});
DiameterResult diameter(const ColoredGraph& g, const DiameterOptions& options = {});

/// Diameter of the subgraph induced by `nodes`.
DiameterResult community_diameter(const ColoredGraph& g, std::span<const NodeId> nodes,
                                  const DiameterOptions& options = {});

}  // namespace homophyly
