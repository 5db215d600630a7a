#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "homophyly/graph.hpp"
#include "homophyly/rng.hpp"

namespace homophyly {

/// What a homophyly node does when its chosen color class has fewer than d
/// members: draw d targets with replacement (parallel edges appear), or link
/// once to every member.
enum class SmallCommunityPolicy { repeat_targets, attach_all_available };

const char* to_string(SmallCommunityPolicy policy);
SmallCommunityPolicy parse_small_community_policy(std::string_view text);

struct GenParams {
  std::size_t n = 10000;
  double a = 1.2;       ///< homophyly exponent
  std::uint32_t d = 5;  ///< edges created per arriving node
  std::uint64_t rng_seed = 1;
  SmallCommunityPolicy small_community_policy = SmallCommunityPolicy::repeat_targets;
  bool probability_clamp = true;  ///< always on; kept so reports state it

  /// Throws InputError unless n > d + 1, a > 0, d >= 1.
  void validate() const;
};

/// Probability that the node arriving at (1-based) step i founds a new color:
/// min(1, 1 / (ln i)^a). Requires i >= 2 and a >= 0; a == 0 gives 1.
double step_probability(std::uint64_t i, double a);

/// Degree-proportional sampling from an urn in which every candidate appears
/// once per unit of degree. `distinct` is the number of different nodes in the
/// urn. With distinct >= count the draws are without replacement; otherwise
/// `policy` decides between `count` draws with replacement and one pick of
/// every candidate. Throws GenerationError on an empty urn.
std::vector<NodeId> preferential_sample(std::span<const NodeId> urn, std::size_t distinct,
                                        std::size_t count, SmallCommunityPolicy policy, Rng& rng);

/// Same draw over an explicit candidate set, weighting each candidate by its
/// current degree in g.
std::vector<NodeId> preferential_sample(const ColoredGraph& g, std::span<const NodeId> candidates,
                                        std::size_t count, SmallCommunityPolicy policy, Rng& rng);

struct GeneratedNetwork {
  ColoredGraph graph;
  EdgeLog log;
};

/// Grows a homophyly network. The initial graph is K_{d+1} with every node a
/// seed of its own color. Each later node v at step i becomes a seed with
/// probability step_probability(i, a) and links to d nodes of the whole graph
/// by preferential attachment; otherwise it adopts a uniformly chosen existing
/// color and links to d nodes of that color, again degree-proportionally.
/// Degrees are read at the start of each step. Output is a pure function of
/// the parameters.
GeneratedNetwork generate_homophyly(const GenParams& params);

/// Barabasi-Albert style baseline on one color: K_{d+1} then d distinct
/// degree-proportional targets per node. Node 0 is the only seed.
ColoredGraph generate_pa(std::size_t n, std::uint32_t d, std::uint64_t rng_seed);

/// Uniform simple graph with exactly m edges (G(n, m)), one color.
ColoredGraph generate_er(std::size_t n, std::size_t m, std::uint64_t rng_seed);

/// Expected number of non-initial seeds and its variance:
/// sum and sum of p(1-p) of step_probability over steps d+2..n.
struct SeedCountMoments {
  double mean = 0.0;
  double variance = 0.0;
};
SeedCountMoments expected_seed_count(std::size_t n, double a, std::uint32_t d);

}  // namespace homophyly
