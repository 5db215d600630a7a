#include "homophyly/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "homophyly/error.hpp"

namespace homophyly {

const char* to_string(SmallCommunityPolicy policy) {
  return policy == SmallCommunityPolicy::repeat_targets ? "repeat-targets" : "attach-all-available";
}

SmallCommunityPolicy parse_small_community_policy(std::string_view text) {
  if (text == "repeat-targets") return SmallCommunityPolicy::repeat_targets;
  if (text == "attach-all-available") return SmallCommunityPolicy::attach_all_available;
  throw InputError("unknown small-community policy '" + std::string(text) + "'");
}

void GenParams::validate() const {
  if (d < 1) throw InputError("d must be at least 1");
  if (n <= static_cast<std::size_t>(d) + 1) throw InputError("n must exceed d + 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("homophyly exponent a must be positive");
  if (!probability_clamp) throw InputError("probability clamping cannot be disabled");
}

double step_probability(std::uint64_t i, double a) {
  if (i < 2) throw InputError("step index must be at least 2");
  if (!(a >= 0.0) || !std::isfinite(a)) throw InputError("exponent must be non-negative");
  const double p = 1.0 / std::pow(std::log(static_cast<double>(i)), a);
  return std::min(1.0, p);
}

std::vector<NodeId> preferential_sample(std::span<const NodeId> urn, std::size_t distinct,
                                        std::size_t count, SmallCommunityPolicy policy, Rng& rng) {
  if (urn.empty() || distinct == 0) throw GenerationError("preferential sampling from an empty candidate set");
  if (count == 0) throw InputError("sample count must be at least 1");

  std::vector<NodeId> picked;
  picked.reserve(count);
  if (distinct < count && policy == SmallCommunityPolicy::repeat_targets) {
    for (std::size_t k = 0; k < count; ++k) picked.push_back(urn[rng.uniform_index(urn.size())]);
    return picked;
  }
  // Rejecting repeats from degree-proportional draws is exactly sequential
  // sampling without replacement, weights renormalized over the remainder.
  const std::size_t want = std::min(count, distinct);
  while (picked.size() < want) {
    const NodeId v = urn[rng.uniform_index(urn.size())];
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  return picked;
}

std::vector<NodeId> preferential_sample(const ColoredGraph& g, std::span<const NodeId> candidates,
                                        std::size_t count, SmallCommunityPolicy policy, Rng& rng) {
  if (candidates.empty()) throw GenerationError("preferential sampling from an empty candidate set");
  std::vector<NodeId> unique(candidates.begin(), candidates.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<NodeId> urn;
  std::size_t distinct = 0;
  for (NodeId v : unique) {
    const std::size_t deg = g.degree(v);
    if (deg > 0) ++distinct;
    urn.insert(urn.end(), deg, v);
  }
  return preferential_sample(urn, distinct, count, policy, rng);
}

namespace {

// Degree urns for the whole graph and for each color class.
class Urns {
 public:
  void add_node(ColorId c) {
    if (c >= by_color_.size()) {
      by_color_.resize(c + 1);
      members_.resize(c + 1, 0);
    }
    ++members_[c];
  }
  void add_edge(NodeId u, ColorId cu, NodeId v, ColorId cv) {
    global_.push_back(u);
    global_.push_back(v);
    by_color_[cu].push_back(u);
    by_color_[cv].push_back(v);
  }
  std::span<const NodeId> global() const { return global_; }
  std::span<const NodeId> color(ColorId c) const { return by_color_[c]; }
  std::size_t members(ColorId c) const { return members_[c]; }

 private:
  std::vector<NodeId> global_;
  std::vector<std::vector<NodeId>> by_color_;
  std::vector<std::size_t> members_;
};

// K_{d+1}; node k is created at step k + 1.
void build_initial(ColoredGraph& g, EdgeLog* log, Urns& urns, std::uint32_t d, bool distinct_colors) {
  for (NodeId v = 0; v <= d; ++v) {
    const ColorId c = distinct_colors ? v : 0;
    const bool seed = distinct_colors || v == 0;
    g.add_node(c, seed, v + 1);
    urns.add_node(c);
    EdgeLogEntry entry{v + 1, v, c, seed, {}, AttachmentKind::initial};
    for (NodeId u = 0; u < v; ++u) {
      g.add_edge(v, u);
      urns.add_edge(v, c, u, g.color(u));
      entry.targets.push_back(u);
    }
    if (log) log->entries.push_back(std::move(entry));
  }
}

}  // namespace

GeneratedNetwork generate_homophyly(const GenParams& params) {
  params.validate();
  Rng rng(params.rng_seed);
  GeneratedNetwork out;
  ColoredGraph& g = out.graph;
  Urns urns;
  build_initial(g, &out.log, urns, params.d, true);
  ColorId colors = params.d + 1;

  for (std::uint64_t step = params.d + 2; step <= params.n; ++step) {
    const NodeId v = static_cast<NodeId>(step - 1);
    const bool seed = rng.bernoulli(step_probability(step, params.a));
    EdgeLogEntry entry;
    entry.step = step;
    entry.node = v;
    entry.is_seed = seed;
    if (seed) {
      entry.color = colors++;
      entry.kind = AttachmentKind::preferential_global;
      entry.targets = preferential_sample(urns.global(), g.node_count(), params.d,
                                          params.small_community_policy, rng);
    } else {
      entry.color = static_cast<ColorId>(rng.uniform_index(colors));
      entry.kind = AttachmentKind::homophyly_local;
      entry.targets = preferential_sample(urns.color(entry.color), urns.members(entry.color),
                                          params.d, params.small_community_policy, rng);
    }
    g.add_node(entry.color, seed, step);
    urns.add_node(entry.color);
    for (NodeId t : entry.targets) {
      g.add_edge(v, t);
      urns.add_edge(v, entry.color, t, g.color(t));
    }
    out.log.entries.push_back(std::move(entry));
  }
  return out;
}

ColoredGraph generate_pa(std::size_t n, std::uint32_t d, std::uint64_t rng_seed) {
  if (d < 1) throw InputError("d must be at least 1");
  if (n <= d) throw InputError("PA needs n > d");
  Rng rng(rng_seed);
  ColoredGraph g;
  Urns urns;
  build_initial(g, nullptr, urns, d, false);
  for (std::uint64_t step = d + 2; step <= n; ++step) {
    const NodeId v = static_cast<NodeId>(step - 1);
    const auto targets = preferential_sample(urns.global(), g.node_count(), d,
                                             SmallCommunityPolicy::repeat_targets, rng);
    g.add_node(0, false, step);
    urns.add_node(0);
    for (NodeId t : targets) {
      g.add_edge(v, t);
      urns.add_edge(v, 0, t, 0);
    }
  }
  return g;
}

ColoredGraph generate_er(std::size_t n, std::size_t m, std::uint64_t rng_seed) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) throw InputError("ER edge count exceeds n(n-1)/2");
  Rng rng(rng_seed);
  ColoredGraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_node(0, v == 0, v + 1);

  // Sample whichever of the edge set or its complement is smaller.
  const bool complement = m > pairs / 2;
  const std::size_t draws = complement ? pairs - m : m;
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::pair<NodeId, NodeId>> order;
  while (chosen.size() < draws) {
    auto u = static_cast<NodeId>(rng.uniform_index(n));
    auto v = static_cast<NodeId>(rng.uniform_index(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (chosen.insert(static_cast<std::uint64_t>(u) * n + v).second) order.emplace_back(u, v);
  }
  if (!complement) {
    for (const auto& [u, v] : order) g.add_edge(u, v);
  } else {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!chosen.contains(static_cast<std::uint64_t>(u) * n + v)) g.add_edge(u, v);
      }
    }
  }
  return g;
}

SeedCountMoments expected_seed_count(std::size_t n, double a, std::uint32_t d) {
  SeedCountMoments m;
  for (std::uint64_t i = static_cast<std::uint64_t>(d) + 2; i <= n; ++i) {
    const double p = step_probability(i, a);
    m.mean += p;
    m.variance += p * (1.0 - p);
  }
  return m;
}

}  // namespace homophyly
