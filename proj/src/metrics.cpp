#include "homophyly/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "homophyly/diameter.hpp"
#include "homophyly/error.hpp"

namespace homophyly {

namespace {

std::vector<NodeId> as_set(const ColoredGraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> set(nodes.begin(), nodes.end());
  for (NodeId v : set) g.require_node(v);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

Histogram degree_distribution(const ColoredGraph& g) {
  Histogram h;
  for (NodeId v = 0; v < g.node_count(); ++v) ++h[g.degree(v)];
  return h;
}

Histogram degree_distribution(const ColoredGraph& g, std::span<const NodeId> nodes) {
  Histogram h;
  for (NodeId v : as_set(g, nodes)) ++h[g.degree(v)];
  return h;
}

double modularity(const ColoredGraph& g, const CommunityPartition& partition) {
  const double m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw MetricError("modularity is undefined on a graph without edges");
  const auto owner = partition.membership(g.node_count());
  std::vector<double> internal(partition.size(), 0.0);
  std::vector<double> volume(partition.size(), 0.0);
  for (const auto& [u, v] : g.edges()) {
    if (owner[u] == owner[v]) internal[owner[u]] += 1.0;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) volume[owner[v]] += static_cast<double>(g.degree(v));
  double q = 0.0;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    const double share = volume[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

CutVolume cut_volume(const ColoredGraph& g, std::span<const NodeId> nodes) {
  const auto set = as_set(g, nodes);
  CutVolume cv;
  for (NodeId v : set) {
    for (NodeId u : g.neighbors(v)) {
      ++cv.volume_inside;
      if (!std::binary_search(set.begin(), set.end(), u)) ++cv.cut;
    }
  }
  cv.volume_outside = 2 * g.edge_count() - cv.volume_inside;
  return cv;
}

double conductance(const ColoredGraph& g, std::span<const NodeId> nodes) {
  const auto set = as_set(g, nodes);
  if (set.empty()) throw MetricError("conductance of the empty set is undefined");
  if (set.size() == g.node_count()) throw MetricError("conductance of the full vertex set is undefined");
  const CutVolume cv = cut_volume(g, set);
  if (cv.cut == 0) return 0.0;
  return static_cast<double>(cv.cut) /
         static_cast<double>(std::min(cv.volume_inside, cv.volume_outside));
}

double conductance_ratio(const ColoredGraph& g, const CommunityPartition& partition) {
  partition.membership(g.node_count());
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& block : partition.blocks) {
    if (block.empty()) continue;
    const double phi = conductance(g, block);
    const double vol = static_cast<double>(cut_volume(g, block).volume_inside);
    weighted += vol * phi;
    total += vol;
  }
  if (total == 0.0) throw MetricError("conductance ratio needs a graph with edges");
  return 1.0 - weighted / total;
}

DegreeProfile degree_priority(const ColoredGraph& g, NodeId v) {
  DegreeProfile p;
  p.node = v;
  std::map<ColorId, std::size_t> by_color;
  for (NodeId u : g.neighbors(v)) ++by_color[g.color(u)];
  p.counts.reserve(by_color.size());
  for (const auto& [c, k] : by_color) p.counts.push_back({c, k});
  // map iteration is already ascending in color, so a stable sort keeps the tie rule.
  std::stable_sort(p.counts.begin(), p.counts.end(),
                   [](const ColorCount& a, const ColorCount& b) { return a.count > b.count; });
  return p;
}

std::size_t same_color_degree(const ColoredGraph& g, NodeId v) {
  const ColorId c = g.color(v);
  std::size_t k = 0;
  for (NodeId u : g.neighbors(v)) k += g.color(u) == c ? 1 : 0;
  return k;
}

std::size_t community_width(const ColoredGraph& g, std::span<const NodeId> nodes) {
  const auto set = as_set(g, nodes);
  if (set.empty()) return 0;
  const ColorId c = g.color(set.front());
  std::size_t width = 0;
  for (NodeId v : set) {
    if (g.color(v) != c) throw InputError("community_width needs a homochromatic set");
    for (NodeId u : g.neighbors(v)) {
      if (g.color(u) != c) {
        ++width;
        break;
      }
    }
  }
  return width;
}

std::size_t node_width(const ColoredGraph& g, NodeId x) {
  const ColorId own = g.color(x);
  std::vector<ColorId> reached;
  for (NodeId y : g.neighbors(x)) {
    if (g.color(y) != own && !g.is_seed(y)) reached.push_back(g.color(y));
  }
  std::sort(reached.begin(), reached.end());
  return static_cast<std::size_t>(std::unique(reached.begin(), reached.end()) - reached.begin());
}

KingCheck king_node_check(const ColoredGraph& g, std::span<const NodeId> nodes) {
  const auto set = as_set(g, nodes);
  KingCheck k;
  if (set.size() < 2) return k;
  bool has_seed = false;
  for (NodeId v : set) {
    if (g.is_seed(v) && !has_seed) {
      has_seed = true;
      k.seed_degree = g.degree(v);
    } else {
      k.runner_up_degree = std::max(k.runner_up_degree, g.degree(v));
    }
  }
  if (!has_seed) return k;
  k.defined = true;
  k.ratio = k.runner_up_degree == 0 ? std::numeric_limits<double>::infinity()
                                    : static_cast<double>(k.seed_degree) /
                                          static_cast<double>(k.runner_up_degree);
  k.is_king = k.ratio >= 2.0;
  return k;
}

CommunityStats community_stats(const ColoredGraph& g, ColorId color, std::span<const NodeId> nodes) {
  CommunityStats s;
  s.color = color;
  s.size = nodes.size();
  if (nodes.empty()) return s;
  s.conductance = nodes.size() == g.node_count() ? 0.0 : conductance(g, nodes);
  s.width = community_width(g, nodes);
  for (NodeId v : nodes) {
    if (g.is_seed(v)) {
      s.seed = v;
      s.seed_created_at = g.created_at(v);
    }
  }
  s.king = king_node_check(g, nodes);
  s.seed_degree = g.degree(s.seed);
  s.runner_up_degree = s.king.runner_up_degree;
  const auto diam = community_diameter(g, nodes);
  if (diam.connected) s.internal_diameter = diam.upper;
  return s;
}

}  // namespace homophyly
