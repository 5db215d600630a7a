#include "homophyly/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homophyly/error.hpp"
#include "homophyly/graph_io.hpp"
#include "homophyly/rng.hpp"

namespace homophyly {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    Thresholds, min_sigma, min_theta, min_seed_constant, community_size_exponent, power_exponent_low,
    power_exponent_high, max_ks_distance, max_exponent_gap, holographic_min_community_size,
    holographic_communities, max_community_diameter_constant, max_global_diameter_constant,
    max_second_degree_factor, max_length_constant, max_late_length_constant, max_width_constant,
    max_late_width_constant, seed_width_cap, king_fraction_floor, early_fraction, late_fraction,
    statistical_pass_fraction, min_nodes, min_communities)

nlohmann::json to_json(const Thresholds& t) {
  nlohmann::json j;
  to_json(j, t);
  return j;
}

Thresholds thresholds_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("thresholds must be a JSON object");
  const nlohmann::json known = to_json(Thresholds{});
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("unknown threshold '" + key + "'");
  }
  Thresholds t;
  from_json(j, t);
  return t;
}

namespace {

// JSON has no infinities; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const CommunityStats& s) {
  Json j;
  j["color"] = s.color;
  j["size"] = s.size;
  j["conductance"] = number(s.conductance);
  j["internal_diameter"] = s.internal_diameter ? Json(*s.internal_diameter) : Json(nullptr);
  j["width"] = s.width;
  j["seed"] = s.seed;
  j["seed_created_at"] = s.seed_created_at;
  j["seed_degree"] = s.seed_degree;
  j["runner_up_degree"] = s.runner_up_degree;
  j["king_defined"] = s.king.defined;
  j["is_king"] = s.king.is_king;
  j["king_ratio"] = s.king.defined ? number(s.king.ratio) : Json(nullptr);
  return j;
}

Json to_json(const PrincipleReport& r) {
  Json j;
  j["principle"] = r.principle;
  j["title"] = r.title;
  j["passed"] = !r.failed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["metric"] = c.metric;
    cj["kind"] = to_string(c.kind);
    cj["status"] = to_string(c.status);
    if (c.status != CheckStatus::skipped || !c.relation.empty()) {
      cj["observed"] = number(c.observed);
      cj["relation"] = c.relation;
      cj["threshold"] = number(c.threshold);
    }
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  Json fitted = Json::object();
  for (const auto& [k, v] : r.fitted) fitted[k] = number(v);
  j["fitted"] = std::move(fitted);
  return j;
}

Json to_json(const GenParams& p) {
  Json j;
  j["n"] = p.n;
  j["a"] = p.a;
  j["d"] = p.d;
  j["rng_seed"] = p.rng_seed;
  j["rng_algorithm"] = std::string(Rng::kAlgorithm);
  j["small_community_policy"] = to_string(p.small_community_policy);
  j["probability_clamp"] = p.probability_clamp;
  return j;
}

Json global_scalars(const GraphAnalysis& an) {
  Json j;
  j["sigma"] = an.sigma ? number(*an.sigma) : Json(nullptr);
  j["theta_proxy"] = an.theta ? number(*an.theta) : Json(nullptr);
  j["theta_definition"] = "theta-proxy: 1 - volume-weighted mean community conductance";
  j["power_exponent_global"] = an.global_fit ? number(an.global_fit->exponent) : Json(nullptr);
  if (an.global_fit) {
    j["power_x_min_global"] = an.global_fit->x_min;
    j["power_ks_global"] = number(an.global_fit->ks_distance);
  } else {
    j["power_fit_error"] = an.global_fit_error;
  }
  std::size_t seeds = 0;
  std::size_t max_size = 0;
  std::size_t max_diam = 0;
  for (const auto& c : an.communities) {
    if (c.size > 0) ++seeds;
    max_size = std::max(max_size, c.size);
    if (c.internal_diameter) max_diam = std::max(max_diam, *c.internal_diameter);
  }
  j["seed_count"] = seeds;
  j["max_community_size"] = max_size;
  j["max_community_diameter"] = max_diam;
  j["diameter_bounds"] = Json::array({an.global_diameter.lower, an.global_diameter.upper});
  j["connected"] = an.global_diameter.connected;
  return j;
}

Json run_report(const RunResult& run) {
  Json j;
  j["model"] = to_string(run.model);
  j["params"] = to_json(run.params);
  j["global"] = global_scalars(run.analysis);
  Json principles = Json::array();
  for (const auto& r : run.reports) principles.push_back(to_json(r));
  j["principles"] = std::move(principles);
  Json communities = Json::array();
  for (const auto& c : run.analysis.communities) communities.push_back(to_json(c));
  j["communities"] = std::move(communities);
  return j;
}

Json grid_report(const GridReport& grid, const Json& run_config) {
  Json j;
  j["run_config"] = run_config;
  j["model"] = to_string(grid.model);
  j["sizes"] = grid.sizes;
  j["a"] = grid.a;
  j["d"] = grid.d;
  j["seeds"] = grid.seeds;
  j["rng_algorithm"] = std::string(Rng::kAlgorithm);
  j["thresholds"] = Json::parse(to_json(grid.thresholds).dump());
  j["passed"] = !grid.failed();
  Json aggregate = Json::array();
  for (const auto& a : grid.aggregate) {
    aggregate.push_back({{"n", a.n},
                         {"principle", a.principle},
                         {"name", a.name},
                         {"kind", to_string(a.kind)},
                         {"runs", a.runs},
                         {"passed", a.passed},
                         {"failed", a.failed},
                         {"skipped", a.skipped},
                         {"status", to_string(a.status)}});
  }
  j["aggregate"] = std::move(aggregate);
  Json trends = Json::array();
  for (const auto& t : grid.trends) {
    Json values = Json::array();
    for (double v : t.values) values.push_back(number(v));
    trends.push_back({{"name", t.name},
                      {"sizes", t.sizes},
                      {"values", std::move(values)},
                      {"bound", number(t.bound)},
                      {"status", to_string(t.status)}});
  }
  j["trends"] = std::move(trends);
  Json runs = Json::array();
  for (const auto& run : grid.runs) runs.push_back(run_report(run));
  j["runs"] = std::move(runs);
  return j;
}

Json analysis_report(const GraphAnalysis& an, const Json& run_config) {
  Json j;
  j["run_config"] = run_config;
  j["nodes"] = an.graph ? an.graph->node_count() : 0;
  j["edges"] = an.graph ? an.graph->edge_count() : 0;
  j["global"] = global_scalars(an);
  Json communities = Json::array();
  for (const auto& c : an.communities) communities.push_back(to_json(c));
  j["communities"] = std::move(communities);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string degree_histogram_tsv(const Histogram& hist) {
  std::ostringstream out;
  out << "degree\tcount\n";
  for (const auto& [degree, count] : hist) {
    if (degree > 0 && count > 0) out << degree << '\t' << count << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_plot_data(const GridReport& grid, const Json& run_config,
                                                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_file_atomic(path, content);
    written.push_back(path);
  };

  std::ostringstream ratios;
  std::ostringstream widths;
  std::ostringstream phis;
  ratios << "n\tseed\tsigma\ttheta_proxy\n";
  widths << "n\tseed\tcolor\tseed_created_at\twidth\n";
  phis << "n\tseed\tcolor\tsize\tconductance\n";
  for (const auto& run : grid.runs) {
    const auto n = run.params.n;
    const auto seed = run.params.rng_seed;
    write("degree_hist.n" + std::to_string(n) + ".seed" + std::to_string(seed) + ".tsv",
          degree_histogram_tsv(run.analysis.degrees));
    ratios << n << '\t' << seed << '\t' << number(run.analysis.sigma.value_or(NAN)).dump() << '\t'
           << number(run.analysis.theta.value_or(NAN)).dump() << '\n';
    for (const auto& w : width_vs_age(run.analysis)) {
      widths << n << '\t' << seed << '\t' << w.color << '\t' << w.seed_created_at << '\t' << w.width << '\n';
    }
    for (const auto& c : run.analysis.communities) {
      if (c.size == 0) continue;
      phis << n << '\t' << seed << '\t' << c.color << '\t' << c.size << '\t' << number(c.conductance).dump()
           << '\n';
    }
  }
  write("ratios.tsv", ratios.str());
  write("width_vs_age.tsv", widths.str());
  write("conductance_vs_size.tsv", phis.str());
  write("run_config.json", dump(run_config));
  return written;
}

}  // namespace homophyly
