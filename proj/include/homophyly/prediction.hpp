#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homophyly/graph.hpp"

namespace homophyly {

struct Paper {
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;  ///< normalized, duplicates removed, file order kept

  bool annotated() const { return !keywords.empty(); }
};

struct LoadStats {
  std::size_t edge_lines = 0;         ///< non-comment lines in the edge file
  std::size_t malformed_edge_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;    ///< repeats after treating citations as undirected
  std::size_t abstract_files = 0;
  std::size_t malformed_abstracts = 0;
  std::size_t keyword_lines = 0;
  std::size_t malformed_keyword_lines = 0;
  std::vector<std::string> warnings;
};

/// Papers are indexed 0..n-1 in ascending numeric id order. Citations are
/// kept undirected and simple.
struct CitationDataset {
  std::vector<std::string> ids;
  std::vector<Paper> papers;
  std::vector<std::pair<NodeId, NodeId>> edges;  ///< (min, max), sorted
  LoadStats stats;

  std::size_t size() const { return papers.size(); }
  std::size_t annotated_count() const;
  std::optional<NodeId> index_of(std::string_view id) const;
};

/// Drops leading zeros ("0001001" -> "1001"); an all-zero id becomes "0".
std::string normalize_paper_id(std::string_view id);

/// Trim, lowercase, collapse inner whitespace, strip surrounding punctuation.
/// Returns an empty string for keywords with no content left.
std::string normalize_keyword(std::string_view keyword);

/// Builds a dataset from in-memory records. Paper ids are normalized; every
/// edge endpoint and every keyed paper becomes a node. Throws InputError on
/// zero annotated papers.
CitationDataset make_dataset(const std::map<std::string, Paper>& papers,
                             const std::vector<std::pair<std::string, std::string>>& citations);

struct DatasetPaths {
  std::filesystem::path edges;      ///< SNAP edge list, `from<TAB>to`, '#' comments
  std::filesystem::path abstracts;  ///< directory searched recursively for <id>.abs / <id>.txt
  std::filesystem::path keywords;   ///< `paper_id<TAB>kw;kw;...`
};

/// Malformed lines are counted in stats, not fatal. Throws InputError for
/// missing paths or when no paper ends up annotated.
CitationDataset load_dataset(const DatasetPaths& paths);

/// Splits an arXiv-style .abs record into (title, abstract). Files without
/// `\\` separators are taken as plain abstract text.
std::pair<std::string, std::string> parse_abstract_file(std::string_view text);

/// Greedy modularity agglomeration (Clauset-Newman-Moore). Merges the pair
/// with the largest modularity gain while it is positive; ties go to the
/// lexicographically smallest community pair. Communities are numbered by
/// their smallest member.
struct DetectedCommunities {
  CommunityPartition partition;
  std::optional<double> modularity;  ///< undefined without edges
  std::size_t merges = 0;
};
DetectedCommunities detect_communities(std::size_t node_count,
                                       const std::vector<std::pair<NodeId, NodeId>>& edges);
DetectedCommunities detect_communities(const CitationDataset& dataset);

/// Modularity of a partition of a simple undirected graph given as an edge list.
double partition_modularity(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
                            const CommunityPartition& partition);

struct KeywordCount {
  std::string keyword;
  std::size_t count = 0;  ///< annotated members carrying the keyword

  friend bool operator==(const KeywordCount&, const KeywordCount&) = default;
};

struct CommonFeatures {
  std::size_t community = 0;
  std::vector<KeywordCount> top;  ///< count descending, then keyword ascending

  friend bool operator==(const CommonFeatures&, const CommonFeatures&) = default;
};

/// One entry per partition block. Throws InputError for k == 0.
std::vector<CommonFeatures> common_features(const CommunityPartition& partition, const CitationDataset& dataset,
                                            std::size_t k);

/// True when `phrase` occurs in `text` as whole tokens, case-insensitively and
/// with whitespace runs collapsed on both sides.
bool contains_phrase(std::string_view text, std::string_view phrase);

struct CurvePoint {
  std::size_t k = 0;
  std::size_t predicted = 0;
  std::size_t confirmed = 0;
  std::size_t papers_confirmed = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct PredictionCurve {
  std::vector<CurvePoint> points;  ///< k = 1..k_max
  std::size_t target_papers = 0;   ///< un-annotated papers in communities with a non-empty CF

  friend bool operator==(const PredictionCurve&, const PredictionCurve&) = default;
};

/// Predicts CF(C) top-k for every un-annotated member of C and confirms a
/// keyword when it occurs in the paper's title or abstract. Throws InputError
/// for k_max == 0.
PredictionCurve predict_and_confirm(const CommunityPartition& partition, const CitationDataset& dataset,
                                    std::size_t k_max);

/// `k<TAB>predicted<TAB>confirmed<TAB>papers_confirmed` with a header line.
std::string curve_tsv(const PredictionCurve& curve);

}  // namespace homophyly
