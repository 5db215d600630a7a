#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "homophyly/principles.hpp"

namespace homophyly {

using Json = nlohmann::ordered_json;

nlohmann::json to_json(const Thresholds& t);
/// Missing keys keep their defaults; unknown keys are rejected.
Thresholds thresholds_from_json(const nlohmann::json& j);

Json to_json(const CommunityStats& s);
Json to_json(const PrincipleReport& r);
Json to_json(const GenParams& p);

/// Global scalars of one analysed graph under their fixed report names:
/// sigma, theta_proxy, power_exponent_global, seed_count,
/// max_community_size, max_community_diameter, diameter_bounds.
Json global_scalars(const GraphAnalysis& an);

/// One document per run: parameters, global scalars, principle checks and
/// the per-community stats array.
Json run_report(const RunResult& run);

/// Grid document embedding `run_config` verbatim, the thresholds, every run,
/// the aggregated checks and the scaling trends.
Json grid_report(const GridReport& grid, const Json& run_config);

/// Report for a graph read from disk (no principle harness).
Json analysis_report(const GraphAnalysis& an, const Json& run_config);

/// Pretty-printed with a trailing newline; identical input gives identical bytes.
std::string dump(const Json& j);

/// Plot-ready TSVs (header line, tab separated) for a grid:
///   <dir>/degree_hist.n<N>.seed<S>.tsv  degree  count   (degree >= 1)
///   <dir>/ratios.tsv                    n seed sigma theta_proxy
///   <dir>/width_vs_age.tsv              n seed color seed_created_at width
///   <dir>/conductance_vs_size.tsv       n seed color size conductance
///   <dir>/run_config.json               the run configuration
/// Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const GridReport& grid, const Json& run_config,
                                                  const std::filesystem::path& dir);

std::string degree_histogram_tsv(const Histogram& hist);

}  // namespace homophyly
