#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "homophyly/error.hpp"
#include "homophyly/metrics.hpp"
#include "homophyly/prediction.hpp"

using namespace homophyly;

namespace {

const std::filesystem::path kToy = std::filesystem::path(HOMOPHYLY_TEST_FIXTURES) / "citation";

DatasetPaths toy_paths() { return {kToy / "edges.txt", kToy / "abstracts", kToy / "keywords.tsv"}; }

std::vector<std::pair<NodeId, NodeId>> edge_list(const ColoredGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(std::min(u, v), std::max(u, v));
  return out;
}

Paper annotated(std::vector<std::string> kws) {
  Paper p;
  p.keywords = std::move(kws);
  return p;
}

Paper text(std::string title, std::string abstract) {
  Paper p;
  p.title = std::move(title);
  p.abstract = std::move(abstract);
  return p;
}

}  // namespace

TEST(Normalize, PaperIdsAndKeywords) {
  EXPECT_EQ(normalize_paper_id("0012345"), "12345");
  EXPECT_EQ(normalize_paper_id(" 9201001 "), "9201001");
  EXPECT_EQ(normalize_paper_id("0"), "0");
  EXPECT_EQ(normalize_keyword("  String   Theory. "), "string theory");
  EXPECT_EQ(normalize_keyword("\"D-branes\","), "d-branes");
  EXPECT_EQ(normalize_keyword(";;"), "");
}

TEST(Phrase, WordBoundaries) {
  EXPECT_TRUE(contains_phrase("We study STRING theory.", "string theory"));
  EXPECT_TRUE(contains_phrase("string\n\ttheory", "string theory"));
  EXPECT_FALSE(contains_phrase("restringing the lattice", "string"));
  EXPECT_FALSE(contains_phrase("strings", "string"));
  EXPECT_TRUE(contains_phrase("the string, again", "string"));
  EXPECT_TRUE(contains_phrase("see d-branes", "d-branes"));
  EXPECT_TRUE(contains_phrase("n=2 susy", "n=2"));
  EXPECT_FALSE(contains_phrase("anything", ""));
}

TEST(AbstractFile, ArxivLayout) {
  const auto [title, abstract] = parse_abstract_file(
      "----\n\\\\\nPaper: hep-th/9201001\nTitle: On the\n  Moduli Space\nAuthors: X\n\\\\\n  Body  text\n more.\n\\\\\n");
  EXPECT_EQ(title, "on the moduli space");
  EXPECT_EQ(abstract, "body text more.");
}

TEST(AbstractFile, NoSeparatorsMeansAbstractOnly) {
  const auto [title, abstract] = parse_abstract_file("Just  Text\n");
  EXPECT_EQ(title, "");
  EXPECT_EQ(abstract, "just text");
}

TEST(Dataset, LoadsToyCorpus) {
  const auto ds = load_dataset(toy_paths());
  ASSERT_EQ(ds.size(), 8u);
  EXPECT_EQ(ds.ids.front(), "9201001");
  EXPECT_EQ(ds.ids.back(), "9202004");
  EXPECT_EQ(ds.edges.size(), 13u);
  EXPECT_EQ(ds.annotated_count(), 5u);
  EXPECT_EQ(ds.stats.edge_lines, 17u);
  EXPECT_EQ(ds.stats.malformed_edge_lines, 2u);
  EXPECT_EQ(ds.stats.self_loops, 1u);
  EXPECT_EQ(ds.stats.duplicate_edges, 1u);
  EXPECT_EQ(ds.stats.keyword_lines, 6u);
  EXPECT_EQ(ds.stats.malformed_keyword_lines, 1u);
  EXPECT_EQ(ds.stats.abstract_files, 4u);
  ASSERT_EQ(ds.stats.warnings.size(), 1u);
  EXPECT_FALSE(ds.index_of("9309999").has_value());

  const Paper& p = ds.papers[*ds.index_of("9201004")];
  EXPECT_EQ(p.title, "compactifications on tori and their moduli");
  EXPECT_EQ(p.abstract, "we study string theory compactifications on flat tori.");
  EXPECT_EQ(ds.papers[*ds.index_of("09201003")].keywords, (std::vector<std::string>{"duality"}));
  EXPECT_EQ(ds.papers[*ds.index_of("9201002")].keywords, (std::vector<std::string>{"string theory", "black holes"}));
}

TEST(Dataset, MissingInputs) {
  auto paths = toy_paths();
  paths.edges = kToy / "nope.txt";
  EXPECT_THROW(load_dataset(paths), InputError);
  paths = toy_paths();
  paths.abstracts = kToy / "nope";
  EXPECT_THROW(load_dataset(paths), InputError);
}

TEST(Dataset, EmptyEdgeFileWarnsAndNoKeywordsFails) {
  const auto dir = std::filesystem::temp_directory_path() / "homophyly_empty_edges";
  std::filesystem::create_directories(dir / "abs");
  std::ofstream(dir / "edges.txt") << "# nothing\n";
  std::ofstream(dir / "kw.tsv") << "1\tfoo\n";
  const auto ds = load_dataset({dir / "edges.txt", dir / "abs", dir / "kw.tsv"});
  EXPECT_TRUE(ds.edges.empty());
  EXPECT_FALSE(ds.stats.warnings.empty());
  EXPECT_FALSE(detect_communities(ds).modularity.has_value());
  std::ofstream(dir / "kw.tsv") << "";
  EXPECT_THROW(load_dataset({dir / "edges.txt", dir / "abs", dir / "kw.tsv"}), InputError);
  std::filesystem::remove_all(dir);
}

TEST(Communities, DisjointCliquesSplit) {
  const auto g = fixtures::two_cliques(5, false);
  const auto det = detect_communities(g.node_count(), edge_list(g));
  EXPECT_EQ(det.partition, homochromatic_sets(g));
  ASSERT_TRUE(det.modularity.has_value());
  EXPECT_NEAR(*det.modularity, 0.5, 1e-15);
  EXPECT_EQ(det.merges, 8u);
}

TEST(Communities, BridgedCliquesSplitAtBridge) {
  const auto g = fixtures::two_cliques(5, true);
  const auto det = detect_communities(g.node_count(), edge_list(g));
  EXPECT_EQ(det.partition, homochromatic_sets(g));
  // Two K5 joined by one edge: 2 * (10/21 - 1/4).
  EXPECT_NEAR(*det.modularity, 2.0 * (10.0 / 21.0 - 0.25), 1e-15);
  EXPECT_NEAR(*det.modularity, modularity(g, det.partition), 1e-15);
}

TEST(Communities, PartitionModularityAgreesWithGraphModularity) {
  for (const auto& [name, g] : fixtures::small_graphs()) {
    SCOPED_TRACE(name);
    const auto det = detect_communities(g.node_count(), edge_list(g));
    det.partition.membership(g.node_count());
    if (g.edge_count() == 0) continue;
    // Parallel edges collapse in edge_list only for the simple fixtures.
    std::vector<std::pair<NodeId, NodeId>> simple = edge_list(g);
    std::sort(simple.begin(), simple.end());
    if (std::unique(simple.begin(), simple.end()) != simple.end()) continue;
    EXPECT_NEAR(partition_modularity(g.node_count(), simple, det.partition), modularity(g, det.partition), 1e-14);
    EXPECT_GE(*det.modularity, 0.0);
  }
}

TEST(Communities, DeterministicAndSortedBySmallestMember) {
  GenParams p;
  p.n = 3000;
  const auto g = generate_homophyly(p).graph;
  auto edges = edge_list(g);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto a = detect_communities(g.node_count(), edges);
  const auto b = detect_communities(g.node_count(), edges);
  EXPECT_EQ(a.partition, b.partition);
  for (std::size_t k = 1; k < a.partition.size(); ++k) {
    EXPECT_LT(a.partition.blocks[k - 1].front(), a.partition.blocks[k].front());
  }
  EXPECT_GT(*a.modularity, 0.5);
}

TEST(CommonFeatures, TieRuleAndTruncation) {
  const auto ds = make_dataset({{"1", annotated({"beta", "alpha"})},
                                {"2", annotated({"alpha", "gamma"})},
                                {"3", annotated({"gamma", "beta"})},
                                {"4", annotated({"delta"})}},
                               {{"1", "2"}});
  const CommunityPartition part{{{0, 1, 2, 3}}};
  const auto cf = common_features(part, ds, 3);
  ASSERT_EQ(cf[0].top.size(), 3u);
  EXPECT_EQ(cf[0].top[0].keyword, "alpha");
  EXPECT_EQ(cf[0].top[1].keyword, "beta");
  EXPECT_EQ(cf[0].top[2].keyword, "gamma");
  EXPECT_EQ(cf[0].top[2].count, 2u);
  EXPECT_EQ(common_features(part, ds, 50)[0].top.size(), 4u);
  EXPECT_THROW(common_features(part, ds, 0), InputError);
}

TEST(Prediction, ToyCorpusCurve) {
  const auto ds = load_dataset(toy_paths());
  const auto det = detect_communities(ds);
  ASSERT_EQ(det.partition.size(), 2u);
  EXPECT_NEAR(*det.modularity, 12.0 / 13.0 - 0.5, 1e-15);
  const auto curve = predict_and_confirm(det.partition, ds, 4);
  EXPECT_EQ(curve.target_papers, 3u);
  ASSERT_EQ(curve.points.size(), 4u);
  const std::vector<std::array<std::size_t, 3>> expect{{3, 0, 0}, {6, 2, 2}, {7, 2, 2}, {7, 2, 2}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(curve.points[k].k, k + 1);
    EXPECT_EQ(curve.points[k].predicted, expect[k][0]) << k;
    EXPECT_EQ(curve.points[k].confirmed, expect[k][1]) << k;
    EXPECT_EQ(curve.points[k].papers_confirmed, expect[k][2]) << k;
  }
  EXPECT_EQ(curve_tsv(curve).substr(0, 36), "k\tpredicted\tconfirmed\tpapers_confirm");
}

TEST(Prediction, AnnotatedPapersAreNeverTargets) {
  const auto ds = make_dataset({{"1", annotated({"x"})}, {"2", annotated({"x"})}}, {{"1", "2"}});
  const auto curve = predict_and_confirm(CommunityPartition{{{0, 1}}}, ds, 5);
  EXPECT_EQ(curve.target_papers, 0u);
  EXPECT_EQ(curve.points.back().predicted, 0u);
}

TEST(Prediction, EmptyCommonFeaturesPredictNothing) {
  const auto ds = make_dataset({{"1", annotated({"x"})}, {"2", text("x", "x")}, {"3", text("x", "x")}},
                               {{"1", "2"}, {"2", "3"}});
  const auto curve = predict_and_confirm(CommunityPartition{{{0}, {1, 2}}}, ds, 3);
  EXPECT_EQ(curve.target_papers, 0u);
  EXPECT_EQ(curve.points.back().predicted, 0u);
}

TEST(Prediction, CurveIsMonotoneAndBounded) {
  std::map<std::string, Paper> papers;
  std::vector<std::pair<std::string, std::string>> cites;
  const std::vector<std::string> vocab{"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
  for (int i = 1; i <= 60; ++i) {
    const std::string id = std::to_string(i);
    if (i % 3 == 0) {
      papers[id] = text("", vocab[i % 6] + " and " + vocab[(i / 3) % 6]);
    } else {
      papers[id] = annotated({vocab[i % 6], vocab[(i + 1) % 6]});
    }
    cites.emplace_back(id, std::to_string(i % 60 + 1));
    cites.emplace_back(id, std::to_string((i + 7) % 60 + 1));
  }
  const auto ds = make_dataset(papers, cites);
  const auto det = detect_communities(ds);
  const auto curve = predict_and_confirm(det.partition, ds, 6);
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    EXPECT_GE(curve.points[k].predicted, curve.points[k - 1].predicted);
    EXPECT_GE(curve.points[k].confirmed, curve.points[k - 1].confirmed);
    EXPECT_GE(curve.points[k].papers_confirmed, curve.points[k - 1].papers_confirmed);
  }
  for (const auto& pt : curve.points) {
    EXPECT_LE(pt.confirmed, pt.predicted);
    EXPECT_LE(pt.papers_confirmed, curve.target_papers);
    EXPECT_LE(pt.papers_confirmed, pt.confirmed);
  }
  const auto again = predict_and_confirm(det.partition, ds, 6);
  EXPECT_EQ(curve_tsv(again), curve_tsv(curve));
}
