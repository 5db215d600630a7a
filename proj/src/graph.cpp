#include "homophyly/graph.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

#include "homophyly/error.hpp"

namespace homophyly {

NodeId ColoredGraph::add_node(ColorId color, bool is_seed, std::uint64_t created_at) {
  if (node_count() >= std::numeric_limits<NodeId>::max()) {
    throw InputError("graph node limit reached");
  }
  adjacency_.emplace_back();
  incident_.emplace_back();
  color_.push_back(color);
  seed_.push_back(is_seed ? 1 : 0);
  created_at_.push_back(created_at);
  return static_cast<NodeId>(color_.size() - 1);
}

void ColoredGraph::add_edge(NodeId u, NodeId v) {
  require_node(u);
  require_node(v);
  if (u == v) throw InputError("self-loop on node " + std::to_string(u));
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  incident_[u].push_back(edges_.size());
  incident_[v].push_back(edges_.size());
  edges_.emplace_back(std::min(u, v), std::max(u, v));
}

void ColoredGraph::require_node(NodeId v) const {
  if (!contains(v)) throw InputError("unknown node id " + std::to_string(v));
}

std::span<const NodeId> ColoredGraph::neighbors(NodeId v) const {
  require_node(v);
  return adjacency_[v];
}

std::span<const std::size_t> ColoredGraph::incident_edges(NodeId v) const {
  require_node(v);
  return incident_[v];
}

ColorId ColoredGraph::color(NodeId v) const {
  require_node(v);
  return color_[v];
}

bool ColoredGraph::is_seed(NodeId v) const {
  require_node(v);
  return seed_[v] != 0;
}

std::uint64_t ColoredGraph::created_at(NodeId v) const {
  require_node(v);
  return created_at_[v];
}

ColorId ColoredGraph::color_bound() const {
  if (color_.empty()) return 0;
  return *std::max_element(color_.begin(), color_.end()) + 1;
}

std::size_t ColoredGraph::seed_count() const {
  return static_cast<std::size_t>(std::count(seed_.begin(), seed_.end(), 1));
}

void ColoredGraph::validate() const {
  const std::size_t n = node_count();
  // Symmetry with multiplicity: sort each list and compare pair counts.
  std::vector<std::vector<NodeId>> sorted(adjacency_);
  for (auto& list : sorted) std::sort(list.begin(), list.end());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : sorted[u]) {
      if (v >= n) throw InputError("adjacency references unknown node");
      const auto fwd = std::equal_range(sorted[u].begin(), sorted[u].end(), v);
      const auto back = std::equal_range(sorted[v].begin(), sorted[v].end(), u);
      if (fwd.second - fwd.first != back.second - back.first) {
        throw InputError("asymmetric adjacency between " + std::to_string(u) + " and " +
                         std::to_string(v));
      }
    }
  }

  const ColorId colors = color_bound();
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> seed_of(colors, kNone);
  std::vector<NodeId> earliest(colors, kNone);
  for (NodeId v = 0; v < n; ++v) {
    const ColorId c = color_[v];
    if (earliest[c] == kNone || created_at_[v] < created_at_[earliest[c]]) earliest[c] = v;
    if (seed_[v]) {
      if (seed_of[c] != kNone) throw InputError("color " + std::to_string(c) + " has two seeds");
      seed_of[c] = v;
    }
  }
  for (ColorId c = 0; c < colors; ++c) {
    if (earliest[c] == kNone) throw InputError("color ids are not dense: " + std::to_string(c));
    if (seed_of[c] == kNone) throw InputError("color " + std::to_string(c) + " has no seed");
    if (seed_of[c] != earliest[c]) {
      throw InputError("seed of color " + std::to_string(c) + " is not its earliest node");
    }
  }
}

const char* to_string(AttachmentKind kind) {
  switch (kind) {
    case AttachmentKind::initial:
      return "initial";
    case AttachmentKind::preferential_global:
      return "preferential-global";
    case AttachmentKind::homophyly_local:
      return "homophyly-local";
  }
  return "unknown";
}

ColoredGraph replay(const EdgeLog& log) {
  ColoredGraph g;
  for (const auto& entry : log.entries) {
    const NodeId v = g.add_node(entry.color, entry.is_seed, entry.step);
    if (v != entry.node) throw InputError("edge log is not in creation order");
    for (NodeId t : entry.targets) g.add_edge(v, t);
  }
  return g;
}

std::vector<std::uint32_t> CommunityPartition::membership(std::size_t node_count) const {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> owner(node_count, kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (NodeId v : blocks[b]) {
      if (v >= node_count) throw InputError("partition references unknown node");
      if (owner[v] != kUnset) throw InputError("partition blocks overlap");
      owner[v] = static_cast<std::uint32_t>(b);
    }
  }
  if (std::find(owner.begin(), owner.end(), kUnset) != owner.end()) {
    throw InputError("partition does not cover every node");
  }
  return owner;
}

CommunityPartition homochromatic_sets(const ColoredGraph& g) {
  CommunityPartition p;
  p.blocks.resize(g.color_bound());
  for (NodeId v = 0; v < g.node_count(); ++v) p.blocks[g.color(v)].push_back(v);
  return p;
}

ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> members(nodes.begin(), nodes.end());
  for (NodeId v : members) g.require_node(v);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto local = [&](NodeId v) -> std::optional<NodeId> {
    const auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return std::nullopt;
    return static_cast<NodeId>(it - members.begin());
  };

  ColoredGraph sub;
  for (NodeId v : members) sub.add_node(g.color(v), g.is_seed(v), g.created_at(v));
  // Internal edges are re-added in global edge order so multiplicities and
  // adjacency order carry over.
  std::vector<std::size_t> internal;
  for (NodeId u : members) {
    const auto nbrs = g.neighbors(u);
    const auto ids = g.incident_edges(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (u < nbrs[k] && local(nbrs[k])) internal.push_back(ids[k]);
    }
  }
  std::sort(internal.begin(), internal.end());
  for (std::size_t e : internal) {
    const auto [u, v] = g.edges()[e];
    sub.add_edge(*local(u), *local(v));
  }
  return sub;
}

std::size_t degree(const ColoredGraph& g, NodeId v) { return g.degree(v); }

}  // namespace homophyly
