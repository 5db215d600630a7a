#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homophyly/diameter.hpp"
#include "homophyly/generator.hpp"
#include "homophyly/graph.hpp"
#include "homophyly/metrics.hpp"
#include "homophyly/powerlaw.hpp"

namespace homophyly {

/// Surrogate constants for the asymptotic claims. Defaults are the values
/// frozen in config/thresholds.json (calibrated on n=10^4, a=1.2, d=5).
struct Thresholds {
  double min_sigma = 0.9;
  double min_theta = 0.9;
  double min_seed_constant = 0.5;         ///< seeds >= c n / (ln n)^a
  double community_size_exponent = 4.0;   ///< max community size <= (ln n)^gamma
  double power_exponent_low = 1.5;
  double power_exponent_high = 3.5;
  double max_ks_distance = 0.1;
  double max_exponent_gap = 0.5;          ///< holographic law
  std::size_t holographic_min_community_size = 40;
  std::size_t holographic_communities = 5;
  double max_community_diameter_constant = 4.0;  ///< diameter <= c1 ln ln n
  double max_global_diameter_constant = 0.5;     ///< diameter <= c2 (ln n)^2
  double max_second_degree_factor = 2.0;         ///< d_2 <= factor * d
  double max_length_constant = 4.0;              ///< l(v) <= C ln n
  double max_late_length_constant = 4.0;         ///< late l(v) <= C ln ln n
  double max_width_constant = 5.0;               ///< w(X) <= C ln n
  double max_late_width_constant = 2.0;          ///< late w(X) <= C ln ln n
  std::size_t seed_width_cap = 10;
  double king_fraction_floor = 0.25;
  double early_fraction = 0.1;
  double late_fraction = 0.9;
  double statistical_pass_fraction = 0.8;  ///< share of seeds a statistical check must pass on
  std::size_t min_nodes = 1000;
  std::size_t min_communities = 30;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

Thresholds load_thresholds(const std::filesystem::path& path);
/// The repository's frozen configuration (compiled-in path), falling back to
/// the struct defaults when the file is missing.
Thresholds default_thresholds();

enum class CheckStatus { pass, fail, skipped };
enum class CheckKind { exact, statistical };

const char* to_string(CheckStatus status);
const char* to_string(CheckKind kind);

struct Check {
  std::string name;
  std::string metric;  ///< metric operation the observation comes from
  CheckKind kind = CheckKind::statistical;
  double observed = 0.0;
  std::string relation;  ///< "<=", ">=", "==", ">" or "in"
  double threshold = 0.0;
  CheckStatus status = CheckStatus::skipped;
  std::string note;
};

struct PrincipleReport {
  int principle = 0;
  std::string title;
  std::vector<Check> checks;
  std::map<std::string, double> fitted;

  bool failed() const;
};

enum class Model { homophyly, pa, er };
const char* to_string(Model model);
Model parse_model(std::string_view text);

/// Everything computed once per graph and shared by the verifiers.
/// Grid runs drop the graph and the per-node vectors once verified and keep
/// only what reports need.
struct GraphAnalysis {
  std::shared_ptr<const ColoredGraph> graph;
  double a = 1.2;
  std::uint32_t d = 5;
  CommunityPartition partition;
  std::vector<CommunityStats> communities;
  std::vector<DegreeProfile> profiles;
  std::vector<std::size_t> node_widths;
  std::vector<std::size_t> same_color;
  Histogram degrees;
  std::optional<PowerLawFit> global_fit;
  std::string global_fit_error;
  std::optional<double> sigma;
  std::optional<double> theta;
  DiameterResult global_diameter;
};

/// `a` and `d` are the model parameters the bounds are stated in.
GraphAnalysis analyze(std::shared_ptr<const ColoredGraph> g, double a, std::uint32_t d,
                      const DiameterOptions& diameter_options = {});

PrincipleReport verify_fundamental(const GraphAnalysis& an, const Thresholds& t);
PrincipleReport verify_community_structure(const GraphAnalysis& an, const Thresholds& t);
PrincipleReport verify_degree_priority(const GraphAnalysis& an, const Thresholds& t);
PrincipleReport verify_widths(const GraphAnalysis& an, const Thresholds& t);
PrincipleReport verify_inclusion_infection(const GraphAnalysis& an);
PrincipleReport verify_king_node(const GraphAnalysis& an, const Thresholds& t);

/// All six, in principle order. Throws InputError for graphs below t.min_nodes.
std::vector<PrincipleReport> verify_all(const GraphAnalysis& an, const Thresholds& t);

/// Induced-subgraph power-law fit options used for single communities.
PowerLawOptions community_fit_options();

/// Width of each community against its seed's creation step.
struct WidthAge {
  ColorId color = 0;
  std::uint64_t seed_created_at = 0;
  std::size_t width = 0;
};
std::vector<WidthAge> width_vs_age(const GraphAnalysis& an);

struct RunResult {
  Model model = Model::homophyly;
  GenParams params;
  GraphAnalysis analysis;
  std::vector<PrincipleReport> reports;
};

/// Builds the graph for one grid cell. PA uses (n, d); ER uses n and
/// m = d (n - d - 1) + d (d + 1) / 2, the edge count of a homophyly graph
/// of the same size.
ColoredGraph build_model(Model model, const GenParams& params);

RunResult run_once(Model model, const GenParams& params, const Thresholds& t,
                   const DiameterOptions& diameter_options = {});

struct AggregateCheck {
  std::size_t n = 0;
  int principle = 0;
  std::string name;
  CheckKind kind = CheckKind::statistical;
  std::size_t runs = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  CheckStatus status = CheckStatus::skipped;
};

struct TrendCheck {
  std::string name;
  std::vector<std::size_t> sizes;
  std::vector<double> values;  ///< per size (max or mean over seeds, see name)
  double bound = 0.0;
  CheckStatus status = CheckStatus::skipped;
};

struct GridReport {
  Model model = Model::homophyly;
  std::vector<std::size_t> sizes;
  double a = 1.2;
  std::uint32_t d = 5;
  std::vector<std::uint64_t> seeds;
  SmallCommunityPolicy policy = SmallCommunityPolicy::repeat_targets;
  Thresholds thresholds;
  std::vector<RunResult> runs;
  std::vector<AggregateCheck> aggregate;
  std::vector<TrendCheck> trends;

  bool failed() const;
};

/// Exact checks must pass on every run, statistical checks on at least
/// statistical_pass_fraction of the runs that evaluated them.
std::vector<AggregateCheck> aggregate_checks(const std::vector<RunResult>& runs, const Thresholds& t);

/// Scaling trends across the grid sizes (needs at least two sizes):
/// max community size / (ln n)^gamma (mean over seeds) must not increase, and
/// max community diameter / ln ln n and global diameter / (ln n)^2 (max over
/// seeds) must stay within the value fitted at the smallest size.
std::vector<TrendCheck> trend_checks(const std::vector<RunResult>& runs, const Thresholds& t);

GridReport run_grid(Model model, const std::vector<std::size_t>& sizes, double a, std::uint32_t d,
                    const std::vector<std::uint64_t>& seeds, SmallCommunityPolicy policy,
                    const Thresholds& t, const DiameterOptions& diameter_options = {});

}  // namespace homophyly
