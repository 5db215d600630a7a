#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "homophyly/graph.hpp"
#include "homophyly/powerlaw.hpp"

namespace homophyly {

// Conventions: edges count with multiplicity in degrees, volumes, cuts and
// modularity. Node sets are treated as sets (duplicates ignored).

/// Exact degree histogram over all nodes (isolated nodes land in bin 0).
Histogram degree_distribution(const ColoredGraph& g);
/// Histogram of whole-graph degrees restricted to `nodes`.
Histogram degree_distribution(const ColoredGraph& g, std::span<const NodeId> nodes);

/// Newman-Girvan modularity sum_c [e_c/m - (vol_c / 2m)^2]. Throws MetricError
/// when the graph has no edges and InputError when the partition does not
/// cover V exactly once.
double modularity(const ColoredGraph& g, const CommunityPartition& partition);

struct CutVolume {
  std::size_t cut = 0;
  std::size_t volume_inside = 0;
  std::size_t volume_outside = 0;
};
CutVolume cut_volume(const ColoredGraph& g, std::span<const NodeId> nodes);

/// cut(X) / min(vol X, vol V\X); 0 when nothing leaves X. Throws MetricError
/// for the empty set or the full vertex set.
double conductance(const ColoredGraph& g, std::span<const NodeId> nodes);

/// Volume-weighted conductance complement 1 - sum_c vol(c) phi(c) / sum_c vol(c),
/// used as a stand-in for the conductance community-structure ratio
/// (reported under the name "theta_proxy"). Empty blocks are skipped.
double conductance_ratio(const ColoredGraph& g, const CommunityPartition& partition);

struct ColorCount {
  ColorId color = 0;
  std::size_t count = 0;
  friend bool operator==(const ColorCount&, const ColorCount&) = default;
};

/// Neighbor counts grouped by neighbor color, largest first, ties by
/// ascending color id. counts[j-1] is the j-th degree d_j(v).
struct DegreeProfile {
  NodeId node = 0;
  std::vector<ColorCount> counts;

  std::size_t length() const { return counts.size(); }
  std::size_t degree_at(std::size_t j) const { return j >= 1 && j <= counts.size() ? counts[j - 1].count : 0; }

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// Isolated nodes get an empty profile.
DegreeProfile degree_priority(const ColoredGraph& g, NodeId v);

/// Edges (with multiplicity) from v to nodes of v's own color.
std::size_t same_color_degree(const ColoredGraph& g, NodeId v);

/// Members of the homochromatic set X whose neighbors span more than one
/// color. Throws InputError if X mixes colors.
std::size_t community_width(const ColoredGraph& g, std::span<const NodeId> nodes);

/// Number of foreign colors Y for which x has an edge to a non-seed node of Y.
std::size_t node_width(const ColoredGraph& g, NodeId x);

struct KingCheck {
  bool defined = false;  ///< false for singletons or sets without a seed
  bool is_king = false;
  double ratio = 0.0;
  std::size_t seed_degree = 0;
  std::size_t runner_up_degree = 0;

  friend bool operator==(const KingCheck&, const KingCheck&) = default;
};

/// Seed degree against the largest degree among the other members of X.
KingCheck king_node_check(const ColoredGraph& g, std::span<const NodeId> nodes);

struct CommunityStats {
  ColorId color = 0;
  std::size_t size = 0;
  double conductance = 0.0;
  std::optional<std::size_t> internal_diameter;  ///< empty when the induced subgraph is disconnected
  std::size_t width = 0;
  NodeId seed = 0;
  std::uint64_t seed_created_at = 0;
  std::size_t seed_degree = 0;
  std::size_t runner_up_degree = 0;
  KingCheck king;

  friend bool operator==(const CommunityStats&, const CommunityStats&) = default;
};

/// Stats of one homochromatic set. A set covering all of V reports conductance 0.
CommunityStats community_stats(const ColoredGraph& g, ColorId color, std::span<const NodeId> nodes);

}  // namespace homophyly
