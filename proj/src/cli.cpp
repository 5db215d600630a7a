#include "homophyly/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

#include "homophyly/error.hpp"
#include "homophyly/graph_io.hpp"
#include "homophyly/prediction.hpp"
#include "homophyly/report.hpp"

namespace homophyly::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

// Keys a config file may carry besides flags; they are written into every
// RunConfig and ignored on input.
const std::set<std::string> kMetadataKeys{"rng_algorithm", "version"};

std::filesystem::path default_out(const std::string& leaf) {
  const char* dir = std::getenv(kOutDirEnv);
  return dir && *dir ? std::filesystem::path(dir) / leaf : std::filesystem::path(leaf);
}

std::string config_value(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : ",") + config_value(e);
    return joined;
  }
  return v.dump();
}

struct Prepared {
  std::vector<std::string> args;
  nlohmann::json thresholds = nlohmann::json::object();
};

// Splices the JSON config (if any) into the argument list. Config keys are
// flag names without dashes; flags given on the command line win.
Prepared prepare(const std::vector<std::string>& args) {
  Prepared out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  out.args = args;
  if (config_path.empty()) return out;

  std::ifstream in(config_path);
  if (!in) throw InputError("cannot open config file " + config_path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad config file " + config_path + ": " + e.what());
  }
  if (!cfg.is_object()) throw InputError("config file must hold a JSON object");

  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                                       : a.find('=') - 2));
  }
  const bool has_subcommand = !args.empty() && args.front().rfind("-", 0) != 0;
  if (!has_subcommand) {
    if (!cfg.contains("subcommand")) throw InputError("no subcommand given on the command line or in the config");
    out.args.insert(out.args.begin(), cfg["subcommand"].get<std::string>());
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "subcommand" || kMetadataKeys.contains(key) || key == "config") continue;
    if (key == "thresholds") {
      if (!value.is_object()) throw InputError("config 'thresholds' must be an object");
      out.thresholds = value;
      continue;
    }
    if (given.contains(key) || value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(config_value(value));
  }
  out.args.insert(out.args.begin() + 1, extra.begin(), extra.end());
  return out;
}

Thresholds resolve_thresholds(const nlohmann::json& from_config, const std::string& path) {
  nlohmann::json merged = to_json(default_thresholds());
  merged.merge_patch(from_config);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open thresholds file " + path);
    merged.merge_patch(nlohmann::json::parse(in));
  }
  return thresholds_from_json(merged);
}

Json run_config(const std::string& subcommand, const Json& flags, const Thresholds* t) {
  Json cfg;
  cfg["subcommand"] = subcommand;
  for (const auto& [k, v] : flags.items()) cfg[k] = v;
  if (t) cfg["thresholds"] = Json::parse(to_json(*t).dump());
  cfg["rng_algorithm"] = std::string(Rng::kAlgorithm);
  cfg["version"] = kVersion;
  return cfg;
}

void ensure_parent(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Common {
  std::string config;
  int threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file whose keys mirror these flags (flags win)");
  sub->add_option("--threads", c.threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);
}

void apply_threads(const Common& c) {
  if (c.threads > 0) omp_set_num_threads(c.threads);
}

struct GenerateFlags {
  std::string model = "homophyly";
  std::size_t n = 10000;
  double a = 1.2;
  std::uint32_t d = 5;
  std::uint64_t seed = 1;
  std::string policy = "repeat-targets";
  std::string out;
};

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  GenParams p;
  p.n = f.n;
  p.a = f.a;
  p.d = f.d;
  p.rng_seed = f.seed;
  p.small_community_policy = parse_small_community_policy(f.policy);
  p.validate();
  const Model model = parse_model(f.model);
  const std::string prefix = f.out.empty() ? default_out("graph").string() : f.out;

  const Json flags{{"model", to_string(model)}, {"n", p.n},      {"a", p.a},
                   {"d", p.d},                  {"seed", f.seed}, {"policy", to_string(p.small_community_policy)},
                   {"out", prefix}};
  const auto start = std::chrono::steady_clock::now();
  const ColoredGraph g = build_model(model, p);

  ensure_parent(prefix);
  std::ostringstream edges, nodes;
  write_edges_tsv(edges, g);
  write_nodes_tsv(nodes, g);
  write_file_atomic(prefix + ".edges.tsv", edges.str());
  write_file_atomic(prefix + ".nodes.tsv", nodes.str());
  write_file_atomic(prefix + ".run_config.json", dump(run_config("generate", flags, nullptr)));
  out << "wrote " << prefix << ".edges.tsv (" << g.edge_count() << " edges), " << prefix << ".nodes.tsv ("
      << g.node_count() << " nodes, " << g.seed_count() << " seeds) in " << seconds_since(start) << " s\n";
  return kExitOk;
}

struct AnalyzeFlags {
  std::string in;
  std::string nodes;
  std::string edges;
  double a = 1.2;
  std::uint32_t d = 5;
  std::string thresholds;
  std::string out;
};

int cmd_analyze(const AnalyzeFlags& f, const nlohmann::json& cfg_thresholds, std::ostream& out) {
  std::string nodes = f.nodes;
  std::string edges = f.edges;
  if (!f.in.empty()) {
    if (nodes.empty()) nodes = f.in + ".nodes.tsv";
    if (edges.empty()) edges = f.in + ".edges.tsv";
  }
  if (nodes.empty() || edges.empty()) throw InputError("analyze needs --in or both --nodes and --edges");
  const Thresholds t = resolve_thresholds(cfg_thresholds, f.thresholds);
  const std::filesystem::path report_path = f.out.empty() ? default_out("analysis.json") : std::filesystem::path(f.out);

  auto g = std::make_shared<const ColoredGraph>(read_graph_tsv(nodes, edges));
  const Json flags{{"in", f.in}, {"nodes", nodes}, {"edges", edges},
                   {"a", f.a},   {"d", f.d},         {"out", report_path.string()}};
  const Json cfg = run_config("analyze", flags, &t);
  const auto start = std::chrono::steady_clock::now();
  const GraphAnalysis an = analyze(g, f.a, f.d);
  Json report = analysis_report(an, cfg);
  if (g->node_count() >= t.min_nodes) {
    Json principles = Json::array();
    for (const auto& r : verify_all(an, t)) principles.push_back(to_json(r));
    report["principles"] = std::move(principles);
  }
  ensure_parent(report_path);
  write_file_atomic(report_path, dump(report));
  auto hist_path = report_path;
  hist_path.replace_extension(".degree_hist.tsv");
  write_file_atomic(hist_path, degree_histogram_tsv(an.degrees));
  out << "wrote " << report_path.string() << " and " << hist_path.string() << " in " << seconds_since(start)
      << " s\n";
  return kExitOk;
}

struct VerifyFlags {
  std::string model = "homophyly";
  std::vector<std::size_t> n_grid{10000};
  double a = 1.2;
  std::uint32_t d = 5;
  std::size_t seeds = 10;
  std::uint64_t seed_base = 1;
  std::string policy = "repeat-targets";
  std::string thresholds;
  std::size_t diameter_exact_limit = DiameterOptions{}.exact_node_limit;
  std::size_t diameter_bfs_budget = DiameterOptions{}.bfs_budget;
  std::string out;
};

int cmd_verify(const VerifyFlags& f, const nlohmann::json& cfg_thresholds, std::ostream& out) {
  if (f.seeds == 0) throw InputError("--seeds must be at least 1");
  const Model model = parse_model(f.model);
  const SmallCommunityPolicy policy = parse_small_community_policy(f.policy);
  const Thresholds t = resolve_thresholds(cfg_thresholds, f.thresholds);
  const std::filesystem::path report_path = f.out.empty() ? default_out("report.json") : std::filesystem::path(f.out);
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < f.seeds; ++k) seeds.push_back(f.seed_base + k);
  DiameterOptions dopts;
  dopts.exact_node_limit = f.diameter_exact_limit;
  dopts.bfs_budget = f.diameter_bfs_budget;

  const Json flags{{"model", to_string(model)},
                   {"n-grid", f.n_grid},
                   {"a", f.a},
                   {"d", f.d},
                   {"seeds", f.seeds},
                   {"seed-base", f.seed_base},
                   {"policy", to_string(policy)},
                   {"diameter-exact-limit", f.diameter_exact_limit},
                   {"diameter-bfs-budget", f.diameter_bfs_budget},
                   {"out", report_path.string()}};
  const Json cfg = run_config("verify", flags, &t);

  const auto start = std::chrono::steady_clock::now();
  const GridReport grid = run_grid(model, f.n_grid, f.a, f.d, seeds, policy, t, dopts);
  ensure_parent(report_path);
  write_file_atomic(report_path, dump(grid_report(grid, cfg)));
  const auto plot_dir = report_path.has_parent_path() ? report_path.parent_path() : std::filesystem::path(".");
  emit_plot_data(grid, cfg, plot_dir);

  for (const auto& a : grid.aggregate) {
    out << (a.status == CheckStatus::fail ? "FAIL" : a.status == CheckStatus::pass ? "pass" : "skip") << "  n="
        << a.n << "  P" << a.principle << " " << a.name << "  (" << a.passed << "/" << a.passed + a.failed
        << " runs)\n";
  }
  for (const auto& tr : grid.trends) {
    out << (tr.status == CheckStatus::fail ? "FAIL" : tr.status == CheckStatus::pass ? "pass" : "skip")
        << "  trend " << tr.name << "\n";
  }
  out << "wrote " << report_path.string() << " (" << grid.runs.size() << " runs in " << seconds_since(start)
      << " s)\n";
  return grid.failed() ? kExitVerification : kExitOk;
}

struct PredictFlags {
  std::string edges;
  std::string abstracts;
  std::string keywords;
  std::size_t kmax = 50;
  std::string out;
};

int cmd_predict(const PredictFlags& f, std::ostream& out) {
  if (f.kmax == 0) throw InputError("--kmax must be at least 1");
  const std::filesystem::path curve_path = f.out.empty() ? default_out("curve.tsv") : std::filesystem::path(f.out);
  auto summary_path = curve_path;
  summary_path.replace_extension(".json");

  const auto start = std::chrono::steady_clock::now();
  const CitationDataset ds = load_dataset({f.edges, f.abstracts, f.keywords});
  const DetectedCommunities found = detect_communities(ds);
  const PredictionCurve curve = predict_and_confirm(found.partition, ds, f.kmax);

  const Json flags{{"edges", f.edges},
                   {"abstracts", f.abstracts},
                   {"keywords", f.keywords},
                   {"kmax", f.kmax},
                   {"out", curve_path.string()}};
  Json summary;
  summary["run_config"] = run_config("predict", flags, nullptr);
  summary["dataset"] = {{"papers", ds.size()},
                        {"edges", ds.edges.size()},
                        {"annotated_papers", ds.annotated_count()},
                        {"edge_lines", ds.stats.edge_lines},
                        {"malformed_edge_lines", ds.stats.malformed_edge_lines},
                        {"self_loops", ds.stats.self_loops},
                        {"duplicate_edges", ds.stats.duplicate_edges},
                        {"abstract_files", ds.stats.abstract_files},
                        {"malformed_abstracts", ds.stats.malformed_abstracts},
                        {"keyword_lines", ds.stats.keyword_lines},
                        {"malformed_keyword_lines", ds.stats.malformed_keyword_lines},
                        {"warnings", ds.stats.warnings}};
  std::size_t sized = 0;
  for (const auto& b : found.partition.blocks) sized += b.size() >= 2 ? 1 : 0;
  summary["communities"] = {{"count", found.partition.size()},
                            {"non_singleton", sized},
                            {"merges", found.merges},
                            {"modularity", found.modularity ? Json(*found.modularity) : Json(nullptr)}};
  summary["target_papers"] = curve.target_papers;
  Json points = Json::array();
  for (const auto& p : curve.points) {
    points.push_back(
        {{"k", p.k}, {"predicted", p.predicted}, {"confirmed", p.confirmed}, {"papers_confirmed", p.papers_confirmed}});
  }
  summary["curve"] = std::move(points);
  if (f.kmax >= 50) {
    const double at50 = static_cast<double>(curve.points[49].papers_confirmed);
    summary["papers_confirmed_k10_over_k50"] =
        at50 > 0 ? Json(static_cast<double>(curve.points[9].papers_confirmed) / at50) : Json(nullptr);
  }

  ensure_parent(curve_path);
  write_file_atomic(curve_path, curve_tsv(curve));
  write_file_atomic(summary_path, dump(summary));
  for (const auto& w : ds.stats.warnings) out << "warning: " << w << "\n";
  out << "papers " << ds.size() << ", edges " << ds.edges.size() << ", annotated " << ds.annotated_count()
      << ", communities " << found.partition.size() << "\n";
  out << "wrote " << curve_path.string() << " and " << summary_path.string() << " in " << seconds_since(start)
      << " s\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homophyly network generator, metrics and principle verification", "homophyly"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate a network and write edge/node TSVs");
  generate->add_option("--model", gen.model, "homophyly | pa | er")->capture_default_str();
  generate->add_option("--n", gen.n, "Node count")->capture_default_str();
  generate->add_option("--a", gen.a, "Homophyly exponent")->capture_default_str();
  generate->add_option("--d", gen.d, "Edges per arriving node")->capture_default_str();
  generate->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  generate->add_option("--policy", gen.policy, "repeat-targets | attach-all-available")->capture_default_str();
  generate->add_option("--out", gen.out, "Output prefix (default $HOMOPHYLY_OUT_DIR/graph)");
  add_common(generate, common);

  AnalyzeFlags ana;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute metrics for a graph read from TSV files");
  analyze_cmd->add_option("--in", ana.in, "Prefix of <prefix>.nodes.tsv and <prefix>.edges.tsv");
  analyze_cmd->add_option("--nodes", ana.nodes, "Node attribute TSV");
  analyze_cmd->add_option("--edges", ana.edges, "Edge list TSV");
  analyze_cmd->add_option("--a", ana.a, "Homophyly exponent used in the bounds")->capture_default_str();
  analyze_cmd->add_option("--d", ana.d, "Attachment degree used in the bounds")->capture_default_str();
  analyze_cmd->add_option("--thresholds", ana.thresholds, "Threshold overrides (JSON)");
  analyze_cmd->add_option("--out", ana.out, "Report path (default $HOMOPHYLY_OUT_DIR/analysis.json)");
  add_common(analyze_cmd, common);

  VerifyFlags ver;
  auto* verify = app.add_subcommand("verify", "Run the principle checks over a size/seed grid");
  verify->add_option("--model", ver.model, "homophyly | pa | er")->capture_default_str();
  verify->add_option("--n-grid", ver.n_grid, "Comma separated node counts")->delimiter(',')->capture_default_str();
  verify->add_option("--a", ver.a, "Homophyly exponent")->capture_default_str();
  verify->add_option("--d", ver.d, "Edges per arriving node")->capture_default_str();
  verify->add_option("--seeds", ver.seeds, "Number of RNG seeds per size")->capture_default_str();
  verify->add_option("--seed-base", ver.seed_base, "First RNG seed")->capture_default_str();
  verify->add_option("--policy", ver.policy, "repeat-targets | attach-all-available")->capture_default_str();
  verify->add_option("--thresholds", ver.thresholds, "Threshold overrides (JSON)");
  verify->add_option("--diameter-exact-limit", ver.diameter_exact_limit, "Largest component measured exactly")
      ->capture_default_str();
  verify->add_option("--diameter-bfs-budget", ver.diameter_bfs_budget, "BFS budget for bounding larger ones")
      ->capture_default_str();
  verify->add_option("--out", ver.out, "Report path; plot TSVs go next to it (default $HOMOPHYLY_OUT_DIR/report.json)");
  add_common(verify, common);

  PredictFlags pred;
  auto* predict = app.add_subcommand("predict", "Keyword prediction on a citation network");
  predict->add_option("--edges", pred.edges, "SNAP citation edge list")->required();
  predict->add_option("--abstracts", pred.abstracts, "Directory of <paper id>.abs files")->required();
  predict->add_option("--keywords", pred.keywords, "paper_id<TAB>kw;kw;... annotations")->required();
  predict->add_option("--kmax", pred.kmax, "Largest k on the curve")->capture_default_str();
  predict->add_option("--out", pred.out, "Curve TSV; summary JSON beside it (default $HOMOPHYLY_OUT_DIR/curve.tsv)");
  add_common(predict, common);

  try {
    Prepared prepared = prepare(raw_args);
    std::vector<std::string> reversed(prepared.args.rbegin(), prepared.args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out << kVersion << "\n";
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n" << app.help();
      return kExitInput;
    }
    apply_threads(common);
    if (generate->parsed()) return cmd_generate(gen, out);
    if (analyze_cmd->parsed()) return cmd_analyze(ana, prepared.thresholds, out);
    if (verify->parsed()) return cmd_verify(ver, prepared.thresholds, out);
    return cmd_predict(pred, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace homophyly::cli
