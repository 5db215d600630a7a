#pragma once

// Data-parallel analysis kernels. Every kernel exists twice: a plain serial
// loop in `serial::`, kept as the reference the tests compare against, and an
// OpenMP version in `parallel::` that the library uses. Both return identical
// results (outputs are indexed, never reduced in thread order).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "homophyly/graph.hpp"
#include "homophyly/metrics.hpp"

namespace homophyly {

/// Compressed simple adjacency (parallel edges collapsed, sorted neighbors)
/// for traversal-heavy kernels.
class Csr {
 public:
  Csr() = default;
  explicit Csr(const ColoredGraph& g);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

inline constexpr std::uint32_t kUnreached = UINT32_MAX;

/// Single-source BFS distances (kUnreached for other components).
std::vector<std::uint32_t> bfs_distances(const Csr& g, NodeId source);

namespace kernels {

namespace serial {
/// Eccentricity of each source within its own component.
std::vector<std::uint32_t> eccentricities(const Csr& g, std::span<const NodeId> sources);
std::vector<CommunityStats> community_stats(const ColoredGraph& g, const CommunityPartition& partition);
std::vector<DegreeProfile> degree_profiles(const ColoredGraph& g);
std::vector<std::size_t> node_widths(const ColoredGraph& g);
}  // namespace serial

namespace parallel {
std::vector<std::uint32_t> eccentricities(const Csr& g, std::span<const NodeId> sources);
std::vector<CommunityStats> community_stats(const ColoredGraph& g, const CommunityPartition& partition);
std::vector<DegreeProfile> degree_profiles(const ColoredGraph& g);
std::vector<std::size_t> node_widths(const ColoredGraph& g);
}  // namespace parallel

}  // namespace kernels
}  // namespace homophyly
