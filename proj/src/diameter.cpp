#include "homophyly/diameter.hpp"

#include <algorithm>

#include "homophyly/kernels.hpp"

namespace homophyly {

namespace {

// Below this many sources the OpenMP team start-up costs more than it saves.
constexpr std::size_t kParallelSources = 256;

std::vector<std::uint32_t> eccentricities(const Csr& g, std::span<const NodeId> sources) {
  return sources.size() >= kParallelSources ? kernels::parallel::eccentricities(g, sources)
                                            : kernels::serial::eccentricities(g, sources);
}

struct Sweep {
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> parent;
  NodeId farthest = 0;
};

Sweep sweep(const Csr& g, NodeId source) {
  Sweep s;
  s.dist.assign(g.node_count(), kUnreached);
  s.parent.assign(g.node_count(), source);
  std::vector<NodeId> queue{source};
  s.dist[source] = 0;
  s.farthest = source;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId u : g.neighbors(v)) {
      if (s.dist[u] == kUnreached) {
        s.dist[u] = s.dist[v] + 1;
        s.parent[u] = v;
        queue.push_back(u);
        s.farthest = u;
      }
    }
  }
  return s;
}

// Node halfway along the BFS-tree path from the sweep source to `end`.
NodeId midpoint(const Sweep& s, NodeId end) {
  std::uint32_t steps = s.dist[end] / 2;
  NodeId v = end;
  while (steps-- > 0) v = s.parent[v];
  return v;
}

ComponentDiameter bound_large(const Csr& g, std::span<const NodeId> component,
                              const DiameterOptions& options) {
  ComponentDiameter out;
  out.nodes = component.size();

  NodeId start = component.front();
  for (NodeId v : component) {
    if (g.neighbors(v).size() > g.neighbors(start).size()) start = v;
  }
  // Four-sweep: two double sweeps, each restarted from the middle of the last path.
  std::size_t lower = 0;
  NodeId center = start;
  for (int round = 0; round < 2; ++round) {
    const Sweep a = sweep(g, center);
    const Sweep b = sweep(g, a.farthest);
    lower = std::max<std::size_t>(lower, b.dist[b.farthest]);
    center = midpoint(b, b.farthest);
  }

  const Sweep from_center = sweep(g, center);
  const std::uint32_t radius = from_center.dist[from_center.farthest];
  lower = std::max<std::size_t>(lower, radius);
  std::size_t upper = 2 * static_cast<std::size_t>(radius);

  std::vector<std::vector<NodeId>> levels(radius + 1);
  for (NodeId v : component) levels[from_center.dist[v]].push_back(v);

  std::size_t budget = options.bfs_budget;
  // Pairs inside levels < i are within 2(i-1) of each other through the
  // center; every longer pair has an endpoint in a level already scanned.
  for (std::uint32_t i = radius; i >= 1 && lower < upper; --i) {
    if (levels[i].size() > budget) break;
    budget -= levels[i].size();
    const auto ecc = eccentricities(g, levels[i]);
    lower = std::max<std::size_t>(lower, *std::max_element(ecc.begin(), ecc.end()));
    upper = std::max<std::size_t>(lower, 2 * static_cast<std::size_t>(i - 1));
  }
  out.lower = lower;
  out.upper = upper;
  return out;
}

}  // namespace

DiameterResult diameter(const Csr& g, const DiameterOptions& options) {
  DiameterResult result;
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<NodeId>> components;
  for (NodeId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<NodeId> comp{root};
    seen[root] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId u : g.neighbors(comp[head])) {
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
      }
    }
    components.push_back(std::move(comp));
  }
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  result.connected = components.size() <= 1;
  for (const auto& comp : components) {
    ComponentDiameter cd;
    if (comp.size() <= options.exact_node_limit) {
      const auto ecc = eccentricities(g, comp);
      cd.nodes = comp.size();
      cd.lower = cd.upper = *std::max_element(ecc.begin(), ecc.end());
    } else {
      cd = bound_large(g, comp, options);
    }
    result.lower = std::max(result.lower, cd.lower);
    result.upper = std::max(result.upper, cd.upper);
    result.components.push_back(cd);
  }
  return result;
}

DiameterResult diameter(const ColoredGraph& g, const DiameterOptions& options) {
  return diameter(Csr(g), options);
}

DiameterResult community_diameter(const ColoredGraph& g, std::span<const NodeId> nodes,
                                  const DiameterOptions& options) {
  return diameter(Csr(induced_subgraph(g, nodes)), options);
}

}  // namespace homophyly
