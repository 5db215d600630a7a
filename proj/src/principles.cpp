#include "homophyly/principles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "homophyly/error.hpp"
#include "homophyly/kernels.hpp"
#include "homophyly/report.hpp"

namespace homophyly {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

const char* to_string(CheckKind kind) { return kind == CheckKind::exact ? "exact" : "statistical"; }

const char* to_string(Model model) {
  switch (model) {
    case Model::homophyly:
      return "homophyly";
    case Model::pa:
      return "pa";
    case Model::er:
      return "er";
  }
  return "unknown";
}

Model parse_model(std::string_view text) {
  if (text == "homophyly") return Model::homophyly;
  if (text == "pa") return Model::pa;
  if (text == "er") return Model::er;
  throw InputError("unknown model '" + std::string(text) + "'");
}

bool PrincipleReport::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.status == CheckStatus::fail; });
}

Thresholds load_thresholds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open thresholds file " + path.string());
  try {
    return thresholds_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad thresholds file " + path.string() + ": " + e.what());
  }
}

Thresholds default_thresholds() {
  const std::filesystem::path frozen = HOMOPHYLY_DEFAULT_THRESHOLDS;
  if (std::filesystem::exists(frozen)) return load_thresholds(frozen);
  return Thresholds{};
}

namespace {

Check make_check(std::string name, std::string metric, CheckKind kind, double observed,
                 std::string relation, double threshold) {
  Check c{std::move(name), std::move(metric), kind, observed, std::move(relation), threshold,
          CheckStatus::fail, {}};
  bool ok = false;
  if (c.relation == "<=") ok = observed <= threshold;
  else if (c.relation == ">=") ok = observed >= threshold;
  else if (c.relation == ">") ok = observed > threshold;
  else if (c.relation == "<") ok = observed < threshold;
  else if (c.relation == "==") ok = observed == threshold;
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

Check skipped_check(std::string name, std::string metric, CheckKind kind, std::string note) {
  Check c;
  c.name = std::move(name);
  c.metric = std::move(metric);
  c.kind = kind;
  c.status = CheckStatus::skipped;
  c.note = std::move(note);
  return c;
}

Check failed_check(std::string name, std::string metric, CheckKind kind, std::string note) {
  Check c = skipped_check(std::move(name), std::move(metric), kind, std::move(note));
  c.status = CheckStatus::fail;
  return c;
}

void require_size(const GraphAnalysis& an, const Thresholds& t) {
  if (!an.graph) throw InputError("analysis no longer holds its graph");
  if (an.graph->node_count() < t.min_nodes) {
    throw InputError("graph has " + std::to_string(an.graph->node_count()) +
                     " nodes; principle statistics need at least " + std::to_string(t.min_nodes));
  }
}

double ln_n(const GraphAnalysis& an) { return std::log(static_cast<double>(an.graph->node_count())); }
double ln_ln_n(const GraphAnalysis& an) { return std::log(ln_n(an)); }

// Communities by descending size, ties by color id.
std::vector<std::size_t> by_size(const GraphAnalysis& an) {
  std::vector<std::size_t> order(an.communities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return an.communities[x].size > an.communities[y].size;
  });
  return order;
}

// Communities with at least one member, by seed creation step.
std::vector<std::size_t> by_age(const GraphAnalysis& an) {
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < an.communities.size(); ++c) {
    if (an.communities[c].size > 0) order.push_back(c);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return an.communities[x].seed_created_at < an.communities[y].seed_created_at;
  });
  return order;
}

// Creation step of the seed at the late quantile of seed order.
std::uint64_t late_step(const GraphAnalysis& an, const Thresholds& t) {
  const auto order = by_age(an);
  if (order.empty()) return 0;
  auto rank = static_cast<std::size_t>(std::floor(t.late_fraction * static_cast<double>(order.size())));
  rank = std::min(rank, order.size() - 1);
  return an.communities[order[rank]].seed_created_at;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(idx, v.size() - 1)];
}

std::string format_range(double lo, double hi) {
  std::ostringstream out;
  out << "range [" << lo << ", " << hi << "]";
  return out.str();
}

}  // namespace

PowerLawOptions community_fit_options() {
  PowerLawOptions o;
  // A community has tens of members; the tail-size guard would reject every
  // candidate, so single communities are fitted over the plain KS search.
  o.max_standard_error = 0.0;
  return o;
}

GraphAnalysis analyze(std::shared_ptr<const ColoredGraph> g, double a, std::uint32_t d,
                      const DiameterOptions& diameter_options) {
  if (!g) throw InputError("analyze needs a graph");
  GraphAnalysis an;
  an.graph = g;
  an.a = a;
  an.d = d;
  an.partition = homochromatic_sets(*g);
  an.communities = kernels::parallel::community_stats(*g, an.partition);
  an.profiles = kernels::parallel::degree_profiles(*g);
  an.node_widths = kernels::parallel::node_widths(*g);
  an.same_color.resize(g->node_count());
  for (NodeId v = 0; v < g->node_count(); ++v) an.same_color[v] = same_color_degree(*g, v);
  an.degrees = degree_distribution(*g);
  try {
    an.global_fit = fit_power_law(an.degrees);
  } catch (const MetricError& e) {
    an.global_fit_error = e.what();
  }
  try {
    an.sigma = modularity(*g, an.partition);
  } catch (const MetricError&) {
  }
  try {
    an.theta = conductance_ratio(*g, an.partition);
  } catch (const MetricError&) {
  }
  an.global_diameter = diameter(*g, diameter_options);
  return an;
}

PrincipleReport verify_fundamental(const GraphAnalysis& an, const Thresholds& t) {
  require_size(an, t);
  const ColoredGraph& g = *an.graph;
  PrincipleReport r{1, "fundamental", {}, {}};
  const double n = static_cast<double>(g.node_count());
  const double lnn = ln_n(an);

  const double seeds = static_cast<double>(g.seed_count());
  const double seed_constant = seeds * std::pow(lnn, an.a) / n;
  r.fitted["seed_constant"] = seed_constant;
  r.checks.push_back(make_check("seed_count", "ColoredGraph::seed_count", CheckKind::statistical,
                                seed_constant, ">=", t.min_seed_constant));

  std::size_t max_size = 0;
  for (const auto& c : an.communities) max_size = std::max(max_size, c.size);
  r.fitted["max_community_size"] = static_cast<double>(max_size);
  r.fitted["community_size_exponent"] = std::log(static_cast<double>(max_size)) / std::log(lnn);
  r.checks.push_back(make_check("max_community_size", "homochromatic_sets", CheckKind::statistical,
                                static_cast<double>(max_size), "<=",
                                std::pow(lnn, t.community_size_exponent)));

  if (an.global_fit) {
    const auto& fit = *an.global_fit;
    r.fitted["power_exponent_global"] = fit.exponent;
    r.fitted["power_x_min_global"] = static_cast<double>(fit.x_min);
    auto exp_check = make_check("power_exponent_global", "fit_power_law", CheckKind::statistical,
                                fit.exponent, "in", t.power_exponent_high);
    exp_check.status = fit.exponent > t.power_exponent_low && fit.exponent < t.power_exponent_high
                           ? CheckStatus::pass
                           : CheckStatus::fail;
    exp_check.note = format_range(t.power_exponent_low, t.power_exponent_high);
    r.checks.push_back(exp_check);
    r.checks.push_back(make_check("power_ks_global", "fit_power_law", CheckKind::statistical,
                                  fit.ks_distance, "<", t.max_ks_distance));
  } else {
    r.checks.push_back(failed_check("power_exponent_global", "fit_power_law", CheckKind::statistical,
                                    an.global_fit_error));
    r.checks.push_back(failed_check("power_ks_global", "fit_power_law", CheckKind::statistical,
                                    an.global_fit_error));
  }

  // Holographic law on the largest communities: induced-subgraph exponent
  // against the global one; member degrees in G fitted as well.
  std::vector<std::size_t> chosen;
  for (std::size_t c : by_size(an)) {
    if (chosen.size() >= t.holographic_communities) break;
    if (an.communities[c].size >= t.holographic_min_community_size) chosen.push_back(c);
  }
  if (chosen.empty()) {
    const std::string note = "no community with at least " +
                             std::to_string(t.holographic_min_community_size) + " nodes";
    r.checks.push_back(skipped_check("holographic_exponent_gap", "fit_power_law", CheckKind::statistical, note));
    r.checks.push_back(skipped_check("community_member_power_law", "fit_power_law", CheckKind::statistical, note));
  } else if (!an.global_fit) {
    r.checks.push_back(failed_check("holographic_exponent_gap", "fit_power_law", CheckKind::statistical,
                                    "global fit failed"));
    r.checks.push_back(failed_check("community_member_power_law", "fit_power_law", CheckKind::statistical,
                                    "global fit failed"));
  } else {
    double worst_gap = 0.0;
    std::size_t fit_failures = 0;
    std::size_t members_in_range = 0;
    for (std::size_t c : chosen) {
      const auto& block = an.partition.blocks[c];
      try {
        const auto sub = induced_subgraph(g, block);
        const auto fit = fit_power_law(degree_distribution(sub), community_fit_options());
        worst_gap = std::max(worst_gap, std::abs(fit.exponent - an.global_fit->exponent));
      } catch (const MetricError&) {
        ++fit_failures;
      }
      try {
        const auto fit = fit_power_law(degree_distribution(g, block), community_fit_options());
        if (fit.exponent > t.power_exponent_low && fit.exponent < t.power_exponent_high) ++members_in_range;
      } catch (const MetricError&) {
      }
    }
    r.fitted["holographic_communities"] = static_cast<double>(chosen.size());
    r.fitted["holographic_max_gap"] = worst_gap;
    auto gap = make_check("holographic_exponent_gap", "fit_power_law", CheckKind::statistical,
                          worst_gap, "<=", t.max_exponent_gap);
    if (fit_failures > 0) {
      gap.status = CheckStatus::fail;
      gap.note = std::to_string(fit_failures) + " community fits failed";
    }
    r.checks.push_back(gap);
    const double share = static_cast<double>(members_in_range) / static_cast<double>(chosen.size());
    auto members = make_check("community_member_power_law", "fit_power_law", CheckKind::statistical,
                              share, ">=", 1.0);
    members.note = "share of largest communities whose member degrees fit an exponent in " +
                   format_range(t.power_exponent_low, t.power_exponent_high);
    r.checks.push_back(members);
  }

  std::size_t max_diam = 0;
  for (const auto& c : an.communities) {
    if (c.internal_diameter) max_diam = std::max(max_diam, *c.internal_diameter);
  }
  const double c1 = static_cast<double>(max_diam) / ln_ln_n(an);
  r.fitted["max_community_diameter"] = static_cast<double>(max_diam);
  r.fitted["community_diameter_constant"] = c1;
  r.checks.push_back(make_check("community_diameter", "community_diameter", CheckKind::statistical, c1,
                                "<=", t.max_community_diameter_constant));

  const auto& gd = an.global_diameter;
  const double c2 = static_cast<double>(gd.upper) / (lnn * lnn);
  r.fitted["diameter_lower"] = static_cast<double>(gd.lower);
  r.fitted["diameter_upper"] = static_cast<double>(gd.upper);
  r.fitted["global_diameter_constant"] = c2;
  if (!gd.connected) {
    r.checks.push_back(failed_check("global_diameter", "diameter", CheckKind::statistical,
                                    "graph is disconnected; diameter is infinite"));
  } else {
    r.checks.push_back(make_check("global_diameter", "diameter", CheckKind::statistical, c2, "<=",
                                  t.max_global_diameter_constant));
  }
  return r;
}

PrincipleReport verify_community_structure(const GraphAnalysis& an, const Thresholds& t) {
  require_size(an, t);
  PrincipleReport r{2, "community structure", {}, {}};

  std::size_t disconnected = 0;
  for (const auto& c : an.communities) {
    if (c.size > 0 && !c.internal_diameter) ++disconnected;
  }
  r.checks.push_back(make_check("communities_connected", "community_diameter", CheckKind::exact,
                                static_cast<double>(disconnected), "==", 0.0));

  // ln phi = ln C - beta ln |X| over communities with a nonzero cut.
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& c : an.communities) {
    if (c.size >= 2 && c.conductance > 0.0 && c.size < an.graph->node_count()) {
      xs.push_back(std::log(static_cast<double>(c.size)));
      ys.push_back(std::log(c.conductance));
    }
  }
  if (xs.size() < 3) {
    r.checks.push_back(skipped_check("conductance_size_decay", "conductance", CheckKind::statistical,
                                     "fewer than 3 communities with a nonzero cut"));
  } else {
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const double beta = -slope;
    r.fitted["conductance_beta"] = beta;
    r.fitted["conductance_constant"] = std::exp(my - slope * mx);
    r.checks.push_back(make_check("conductance_size_decay", "conductance", CheckKind::statistical, beta,
                                  ">", 0.0));
  }

  if (an.sigma) {
    r.fitted["sigma"] = *an.sigma;
    r.checks.push_back(make_check("modularity", "modularity", CheckKind::statistical, *an.sigma, ">=",
                                  t.min_sigma));
  } else {
    r.checks.push_back(failed_check("modularity", "modularity", CheckKind::statistical, "undefined"));
  }
  if (an.theta) {
    r.fitted["theta_proxy"] = *an.theta;
    r.checks.push_back(make_check("theta_proxy", "conductance_ratio", CheckKind::statistical, *an.theta,
                                  ">=", t.min_theta));
  } else {
    r.checks.push_back(failed_check("theta_proxy", "conductance_ratio", CheckKind::statistical,
                                    "undefined: a block covers the whole graph"));
  }
  return r;
}

PrincipleReport verify_degree_priority(const GraphAnalysis& an, const Thresholds& t) {
  require_size(an, t);
  const ColoredGraph& g = *an.graph;
  PrincipleReport r{3, "degree priority", {}, {}};

  // First-degree property. A node alone in its color has no same-color
  // neighbors, so the property is checked on members of larger communities.
  std::size_t violations = 0;
  std::size_t singletons = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (an.communities[g.color(v)].size < 2) {
      ++singletons;
      continue;
    }
    if (an.profiles[v].degree_at(1) != an.same_color[v]) ++violations;
  }
  r.fitted["singleton_nodes_excluded"] = static_cast<double>(singletons);
  auto first = make_check("first_degree_is_same_color", "degree_priority", CheckKind::exact,
                          static_cast<double>(violations), "==", 0.0);
  first.note = "nodes in communities of size >= 2";
  r.checks.push_back(first);

  std::vector<double> second;
  std::vector<double> lengths;
  second.reserve(g.node_count());
  lengths.reserve(g.node_count());
  for (const auto& p : an.profiles) {
    second.push_back(static_cast<double>(p.degree_at(2)));
    lengths.push_back(static_cast<double>(p.length()));
  }
  const double max_second = second.empty() ? 0.0 : *std::max_element(second.begin(), second.end());
  r.fitted["second_degree_max"] = max_second;
  r.fitted["second_degree_p99"] = quantile(second, 0.99);
  r.checks.push_back(make_check("second_degree_bounded", "degree_priority", CheckKind::statistical,
                                max_second, "<=", t.max_second_degree_factor * an.d));

  const double max_length = lengths.empty() ? 0.0 : *std::max_element(lengths.begin(), lengths.end());
  const double length_constant = max_length / ln_n(an);
  r.fitted["length_max"] = max_length;
  r.fitted["length_constant"] = length_constant;
  r.checks.push_back(make_check("length_log_n", "degree_priority", CheckKind::statistical,
                                length_constant, "<=", t.max_length_constant));

  const std::uint64_t late = late_step(an, t);
  double late_max = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.created_at(v) >= late) late_max = std::max(late_max, lengths[v]);
  }
  const double late_constant = late_max / ln_ln_n(an);
  r.fitted["late_step"] = static_cast<double>(late);
  r.fitted["late_length_max"] = late_max;
  r.fitted["late_length_constant"] = late_constant;
  r.checks.push_back(make_check("late_length_log_log_n", "degree_priority", CheckKind::statistical,
                                late_constant, "<=", t.max_late_length_constant));

  std::vector<double> seed_first;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_seed(v)) seed_first.push_back(static_cast<double>(an.profiles[v].degree_at(1)));
  }
  const double med = median(seed_first);
  const double gamma = med > 0.0 ? std::log(med) / ln_ln_n(an) : 0.0;
  r.fitted["seed_first_degree_median"] = med;
  r.fitted["seed_first_degree_gamma"] = gamma;
  r.checks.push_back(make_check("seed_first_degree_growth", "degree_priority", CheckKind::statistical,
                                gamma, ">", 0.0));
  return r;
}

std::vector<WidthAge> width_vs_age(const GraphAnalysis& an) {
  std::vector<WidthAge> out;
  for (std::size_t c : by_age(an)) {
    const auto& s = an.communities[c];
    out.push_back({s.color, s.seed_created_at, s.width});
  }
  return out;
}

PrincipleReport verify_widths(const GraphAnalysis& an, const Thresholds& t) {
  require_size(an, t);
  PrincipleReport r{4, "widths", {}, {}};
  const auto order = by_age(an);
  const char* names[] = {"width_log_n", "early_wider_than_late", "early_not_below_middle",
                         "late_width_log_log_n"};
  if (order.size() < t.min_communities) {
    for (const char* name : names) {
      r.checks.push_back(skipped_check(name, "community_width", CheckKind::statistical,
                                       "fewer than " + std::to_string(t.min_communities) + " communities"));
    }
    return r;
  }

  const std::size_t count = order.size();
  const auto early_end = static_cast<std::size_t>(std::floor(t.early_fraction * static_cast<double>(count)));
  const auto late_begin = static_cast<std::size_t>(std::floor(t.late_fraction * static_cast<double>(count)));
  std::vector<double> early;
  std::vector<double> middle;
  std::vector<double> late;
  double max_width = 0.0;
  for (std::size_t rank = 0; rank < count; ++rank) {
    const double w = static_cast<double>(an.communities[order[rank]].width);
    max_width = std::max(max_width, w);
    if (rank < std::max<std::size_t>(early_end, 1)) early.push_back(w);
    else if (rank >= late_begin) late.push_back(w);
    else middle.push_back(w);
  }
  const double width_constant = max_width / ln_n(an);
  const double early_med = median(early);
  const double middle_med = median(middle);
  const double late_med = median(late);
  const double late_max = late.empty() ? 0.0 : *std::max_element(late.begin(), late.end());
  const double late_constant = late_max / ln_ln_n(an);
  r.fitted["width_max"] = max_width;
  r.fitted["width_constant"] = width_constant;
  r.fitted["early_width_median"] = early_med;
  r.fitted["early_width_constant"] = early_med / ln_n(an);
  r.fitted["middle_width_median"] = middle_med;
  r.fitted["late_width_median"] = late_med;
  r.fitted["late_width_max"] = late_max;
  r.fitted["late_width_constant"] = late_constant;

  r.checks.push_back(make_check(names[0], "community_width", CheckKind::statistical, width_constant, "<=",
                                t.max_width_constant));
  auto ordering = make_check(names[1], "community_width", CheckKind::statistical, early_med, ">", late_med);
  ordering.note = "median width, earliest vs latest communities";
  r.checks.push_back(ordering);
  r.checks.push_back(make_check(names[2], "community_width", CheckKind::statistical, early_med, ">=",
                                middle_med));
  r.checks.push_back(make_check(names[3], "community_width", CheckKind::statistical, late_constant, "<=",
                                t.max_late_width_constant));
  return r;
}

PrincipleReport verify_inclusion_infection(const GraphAnalysis& an) {
  if (!an.graph) throw InputError("analysis no longer holds its graph");
  const ColoredGraph& g = *an.graph;
  PrincipleReport r{5, "inclusion and infection", {}, {}};
  std::size_t non_seed_max = 0;
  std::size_t seed_max = 0;
  double seed_sum = 0.0;
  std::size_t seeds = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t w = an.node_widths[v];
    if (g.is_seed(v)) {
      seed_max = std::max(seed_max, w);
      seed_sum += static_cast<double>(w);
      ++seeds;
    } else {
      non_seed_max = std::max(non_seed_max, w);
    }
  }
  r.fitted["seed_width_max"] = static_cast<double>(seed_max);
  r.fitted["seed_width_mean"] = seeds ? seed_sum / static_cast<double>(seeds) : 0.0;
  r.checks.push_back(make_check("non_seed_width_zero", "node_width", CheckKind::exact,
                                static_cast<double>(non_seed_max), "==", 0.0));
  return r;
}

PrincipleReport verify_king_node(const GraphAnalysis& an, const Thresholds& t) {
  PrincipleReport r{6, "king node", {}, {}};
  std::size_t defined = 0;
  std::size_t kings = 0;
  std::size_t nonempty = 0;
  for (const auto& c : an.communities) {
    if (c.size > 0) ++nonempty;
    if (!c.king.defined) continue;
    ++defined;
    kings += c.king.is_king ? 1 : 0;
  }
  if (nonempty < 2 || defined == 0) {
    r.checks.push_back(skipped_check("king_fraction", "king_node_check", CheckKind::statistical,
                                     "needs at least two communities with two or more members"));
    return r;
  }
  const double fraction = static_cast<double>(kings) / static_cast<double>(defined);
  r.fitted["king_fraction"] = fraction;
  r.fitted["communities_evaluated"] = static_cast<double>(defined);
  r.checks.push_back(make_check("king_fraction", "king_node_check", CheckKind::statistical, fraction,
                                ">=", t.king_fraction_floor));
  return r;
}

std::vector<PrincipleReport> verify_all(const GraphAnalysis& an, const Thresholds& t) {
  require_size(an, t);
  std::vector<PrincipleReport> out;
  out.push_back(verify_fundamental(an, t));
  out.push_back(verify_community_structure(an, t));
  out.push_back(verify_degree_priority(an, t));
  out.push_back(verify_widths(an, t));
  auto inclusion = verify_inclusion_infection(an);
  // Seed widths are only flagged, never failed: the bound is O(1) with an unknown constant.
  if (inclusion.fitted["seed_width_max"] > static_cast<double>(t.seed_width_cap)) {
    inclusion.checks.front().note = "warning: seed width above cap " + std::to_string(t.seed_width_cap);
  }
  out.push_back(std::move(inclusion));
  out.push_back(verify_king_node(an, t));
  return out;
}

ColoredGraph build_model(Model model, const GenParams& params) {
  switch (model) {
    case Model::homophyly:
      return generate_homophyly(params).graph;
    case Model::pa:
      return generate_pa(params.n, params.d, params.rng_seed);
    case Model::er: {
      const std::size_t d = params.d;
      const std::size_t m = d * (params.n - d - 1) + d * (d + 1) / 2;
      return generate_er(params.n, m, params.rng_seed);
    }
  }
  throw InputError("unknown model");
}

RunResult run_once(Model model, const GenParams& params, const Thresholds& t,
                   const DiameterOptions& diameter_options) {
  params.validate();
  RunResult run;
  run.model = model;
  run.params = params;
  auto graph = std::make_shared<const ColoredGraph>(build_model(model, params));
  run.analysis = analyze(std::move(graph), params.a, params.d, diameter_options);
  run.reports = verify_all(run.analysis, t);
  return run;
}

std::vector<AggregateCheck> aggregate_checks(const std::vector<RunResult>& runs, const Thresholds& t) {
  std::vector<AggregateCheck> out;
  auto find = [&](std::size_t n, int principle, const std::string& name) -> AggregateCheck& {
    for (auto& a : out) {
      if (a.n == n && a.principle == principle && a.name == name) return a;
    }
    out.push_back({n, principle, name, CheckKind::statistical, 0, 0, 0, 0, CheckStatus::skipped});
    return out.back();
  };
  for (const auto& run : runs) {
    for (const auto& report : run.reports) {
      for (const auto& check : report.checks) {
        auto& a = find(run.params.n, report.principle, check.name);
        a.kind = check.kind;
        ++a.runs;
        switch (check.status) {
          case CheckStatus::pass:
            ++a.passed;
            break;
          case CheckStatus::fail:
            ++a.failed;
            break;
          case CheckStatus::skipped:
            ++a.skipped;
            break;
        }
      }
    }
  }
  for (auto& a : out) {
    const std::size_t evaluated = a.passed + a.failed;
    if (evaluated == 0) {
      a.status = CheckStatus::skipped;
    } else if (a.kind == CheckKind::exact) {
      a.status = a.failed == 0 ? CheckStatus::pass : CheckStatus::fail;
    } else {
      const double share = static_cast<double>(a.passed) / static_cast<double>(evaluated);
      a.status = share >= t.statistical_pass_fraction ? CheckStatus::pass : CheckStatus::fail;
    }
  }
  return out;
}

std::vector<TrendCheck> trend_checks(const std::vector<RunResult>& runs, const Thresholds& t) {
  std::vector<std::size_t> sizes;
  for (const auto& run : runs) sizes.push_back(run.params.n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  TrendCheck size_trend{"max_community_size_over_log_n_gamma_mean", sizes, {}, 0.0, CheckStatus::skipped};
  TrendCheck diam_trend{"max_community_diameter_over_log_log_n_max", sizes, {}, 0.0, CheckStatus::skipped};
  TrendCheck global_trend{"global_diameter_over_log_n_squared_max", sizes, {}, 0.0, CheckStatus::skipped};
  for (std::size_t n : sizes) {
    const double lnn = std::log(static_cast<double>(n));
    double size_sum = 0.0;
    std::size_t count = 0;
    double diam_max = 0.0;
    double global_max = 0.0;
    for (const auto& run : runs) {
      if (run.params.n != n) continue;
      std::size_t max_size = 0;
      std::size_t max_diam = 0;
      for (const auto& c : run.analysis.communities) {
        max_size = std::max(max_size, c.size);
        if (c.internal_diameter) max_diam = std::max(max_diam, *c.internal_diameter);
      }
      size_sum += static_cast<double>(max_size) / std::pow(lnn, t.community_size_exponent);
      ++count;
      diam_max = std::max(diam_max, static_cast<double>(max_diam) / std::log(lnn));
      global_max = std::max(global_max, static_cast<double>(run.analysis.global_diameter.upper) / (lnn * lnn));
    }
    size_trend.values.push_back(size_sum / static_cast<double>(count));
    diam_trend.values.push_back(diam_max);
    global_trend.values.push_back(global_max);
  }
  if (sizes.size() >= 2) {
    bool non_increasing = true;
    for (std::size_t k = 1; k < sizes.size(); ++k) {
      non_increasing = non_increasing && size_trend.values[k] <= size_trend.values[k - 1];
    }
    size_trend.bound = size_trend.values.front();
    size_trend.status = non_increasing ? CheckStatus::pass : CheckStatus::fail;
    for (TrendCheck* trend : {&diam_trend, &global_trend}) {
      trend->bound = trend->values.front();
      const bool bounded = std::all_of(trend->values.begin(), trend->values.end(),
                                       [&](double v) { return v <= trend->bound; });
      trend->status = bounded ? CheckStatus::pass : CheckStatus::fail;
    }
  }
  return {size_trend, diam_trend, global_trend};
}

bool GridReport::failed() const {
  return std::any_of(aggregate.begin(), aggregate.end(),
                     [](const AggregateCheck& a) { return a.status == CheckStatus::fail; }) ||
         std::any_of(trends.begin(), trends.end(),
                     [](const TrendCheck& tc) { return tc.status == CheckStatus::fail; });
}

GridReport run_grid(Model model, const std::vector<std::size_t>& sizes, double a, std::uint32_t d,
                    const std::vector<std::uint64_t>& seeds, SmallCommunityPolicy policy,
                    const Thresholds& t, const DiameterOptions& diameter_options) {
  if (sizes.empty() || seeds.empty()) throw InputError("grid needs at least one size and one seed");
  GridReport grid;
  grid.model = model;
  grid.sizes = sizes;
  grid.a = a;
  grid.d = d;
  grid.seeds = seeds;
  grid.policy = policy;
  grid.thresholds = t;
  for (std::size_t n : sizes) {
    for (std::uint64_t seed : seeds) {
      GenParams p;
      p.n = n;
      p.a = a;
      p.d = d;
      p.rng_seed = seed;
      p.small_community_policy = policy;
      RunResult run = run_once(model, p, t, diameter_options);
      run.analysis.graph.reset();
      run.analysis.profiles = {};
      run.analysis.node_widths = {};
      run.analysis.same_color = {};
      grid.runs.push_back(std::move(run));
    }
  }
  grid.aggregate = aggregate_checks(grid.runs, t);
  grid.trends = trend_checks(grid.runs, t);
  return grid;
}

}  // namespace homophyly
