#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace homophyly {

using NodeId = std::uint32_t;
using ColorId = std::uint32_t;

/// Undirected multigraph whose nodes carry a color, a seed flag and the time
/// step at which they were created. Node ids are dense and follow creation
/// order. Parallel edges are kept (each occurrence listed in both adjacency
/// lists); self-loops are rejected.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  NodeId add_node(ColorId color, bool is_seed, std::uint64_t created_at);
  void add_edge(NodeId u, NodeId v);

  std::size_t node_count() const { return color_.size(); }
  /// Edges counted with multiplicity.
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const;
  /// Indices into edges(), parallel to neighbors(v).
  std::span<const std::size_t> incident_edges(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  ColorId color(NodeId v) const;
  bool is_seed(NodeId v) const;
  std::uint64_t created_at(NodeId v) const;

  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  const std::vector<ColorId>& colors() const { return color_; }

  /// One past the largest color id in use (0 for an empty graph).
  ColorId color_bound() const;
  std::size_t seed_count() const;

  bool contains(NodeId v) const { return v < node_count(); }
  void require_node(NodeId v) const;

  /// Checks the structural invariants of a generated graph: symmetric
  /// adjacency and exactly one seed per color, that seed being the earliest
  /// created node of its color. Throws InputError naming the first violation.
  void validate() const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<ColorId> color_;
  std::vector<std::uint8_t> seed_;
  std::vector<std::uint64_t> created_at_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
};

enum class AttachmentKind { initial, preferential_global, homophyly_local };

const char* to_string(AttachmentKind kind);

struct EdgeLogEntry {
  std::uint64_t step = 0;
  NodeId node = 0;
  ColorId color = 0;
  bool is_seed = false;
  std::vector<NodeId> targets;
  AttachmentKind kind = AttachmentKind::initial;

  friend bool operator==(const EdgeLogEntry&, const EdgeLogEntry&) = default;
};

/// Creation record of every node, in order. Initial-graph nodes are logged
/// with kind `initial` and their edges to earlier initial nodes, so replaying
/// the log from an empty graph rebuilds the generated graph exactly.
struct EdgeLog {
  std::vector<EdgeLogEntry> entries;

  friend bool operator==(const EdgeLog&, const EdgeLog&) = default;
};

ColoredGraph replay(const EdgeLog& log);

/// Node sets; for homochromatic partitions block i holds the nodes of color i.
struct CommunityPartition {
  std::vector<std::vector<NodeId>> blocks;

  std::size_t size() const { return blocks.size(); }
  /// Block index of every node. Throws InputError unless the blocks are
  /// disjoint and cover [0, node_count).
  std::vector<std::uint32_t> membership(std::size_t node_count) const;

  friend bool operator==(const CommunityPartition&, const CommunityPartition&) = default;
};

/// Partition of V by color, ordered by color id; each block sorted by node id.
/// Colors without nodes produce empty blocks.
CommunityPartition homochromatic_sets(const ColoredGraph& g);

/// Subgraph induced by `nodes`. Nodes are renumbered in ascending original-id
/// order and keep their color, seed flag and creation step; only edges with
/// both endpoints inside survive (with multiplicity).
ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const NodeId> nodes);

/// Degree with multiplicity. Throws InputError for unknown nodes.
std::size_t degree(const ColoredGraph& g, NodeId v);

}  // namespace homophyly
