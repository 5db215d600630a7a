#include "homophyly/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace homophyly {

Csr::Csr(const ColoredGraph& g) {
  const std::size_t n = g.node_count();
  offsets_.assign(n + 1, 0);
  std::vector<NodeId> scratch;
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    scratch.assign(nbrs.begin(), nbrs.end());
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    targets_.insert(targets_.end(), scratch.begin(), scratch.end());
    offsets_[v + 1] = targets_.size();
  }
}

namespace {

// BFS reusing caller-owned buffers; returns the largest finite distance.
std::uint32_t bfs_ecc(const Csr& g, NodeId source, std::vector<std::uint32_t>& dist,
                      std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::uint32_t ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    const std::uint32_t next = dist[v] + 1;
    for (NodeId u : g.neighbors(v)) {
      if (dist[u] == kUnreached) {
        dist[u] = next;
        ecc = next;
        queue.push_back(u);
      }
    }
  }
  return ecc;
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Csr& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  bfs_ecc(g, source, dist, queue);
  return dist;
}

namespace kernels {

namespace serial {

std::vector<std::uint32_t> eccentricities(const Csr& g, std::span<const NodeId> sources) {
  std::vector<std::uint32_t> out(sources.size());
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  for (std::size_t k = 0; k < sources.size(); ++k) out[k] = bfs_ecc(g, sources[k], dist, queue);
  return out;
}

std::vector<CommunityStats> community_stats(const ColoredGraph& g, const CommunityPartition& partition) {
  std::vector<CommunityStats> out(partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c) {
    out[c] = homophyly::community_stats(g, static_cast<ColorId>(c), partition.blocks[c]);
  }
  return out;
}

std::vector<DegreeProfile> degree_profiles(const ColoredGraph& g) {
  std::vector<DegreeProfile> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = degree_priority(g, v);
  return out;
}

std::vector<std::size_t> node_widths(const ColoredGraph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = node_width(g, v);
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<std::uint32_t> eccentricities(const Csr& g, std::span<const NodeId> sources) {
  std::vector<std::uint32_t> out(sources.size());
  const auto count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(g.node_count());
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k) out[k] = bfs_ecc(g, sources[k], dist, queue);
  }
  return out;
}

std::vector<CommunityStats> community_stats(const ColoredGraph& g, const CommunityPartition& partition) {
  std::vector<CommunityStats> out(partition.size());
  const auto count = static_cast<std::int64_t>(partition.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t c = 0; c < count; ++c) {
    out[c] = homophyly::community_stats(g, static_cast<ColorId>(c), partition.blocks[c]);
  }
  return out;
}

std::vector<DegreeProfile> degree_profiles(const ColoredGraph& g) {
  std::vector<DegreeProfile> out(g.node_count());
  const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t v = 0; v < n; ++v) out[v] = degree_priority(g, static_cast<NodeId>(v));
  return out;
}

std::vector<std::size_t> node_widths(const ColoredGraph& g) {
  std::vector<std::size_t> out(g.node_count());
  const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t v = 0; v < n; ++v) out[v] = node_width(g, static_cast<NodeId>(v));
  return out;
}

}  // namespace parallel

}  // namespace kernels
}  // namespace homophyly
