#include "homophyly/prediction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "homophyly/error.hpp"

namespace homophyly {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Lowercase, whitespace runs folded into one space, ends trimmed.
std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(lower(c));
  }
  return out;
}

bool numeric_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

std::vector<std::string> split_keywords(std::string_view list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(';', start), list.size());
    std::string kw = normalize_keyword(list.substr(start, end - start));
    if (!kw.empty() && std::find(out.begin(), out.end(), kw) == out.end()) out.push_back(std::move(kw));
    start = end + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Builder {
  std::map<std::string, Paper, decltype(&numeric_less)> papers{&numeric_less};
  std::vector<std::pair<std::string, std::string>> citations;
};

CitationDataset finish(Builder&& b, LoadStats stats) {
  for (const auto& [u, v] : b.citations) {
    b.papers.try_emplace(u);
    b.papers.try_emplace(v);
  }
  CitationDataset ds;
  ds.stats = std::move(stats);
  std::unordered_map<std::string, NodeId> index;
  for (auto& [id, paper] : b.papers) {
    paper.title = fold(paper.title);
    paper.abstract = fold(paper.abstract);
    index.emplace(id, static_cast<NodeId>(ds.ids.size()));
    ds.ids.push_back(id);
    ds.papers.push_back(std::move(paper));
  }
  for (const auto& [u, v] : b.citations) {
    const NodeId a = index.at(u);
    const NodeId c = index.at(v);
    if (a == c) {
      ++ds.stats.self_loops;
      continue;
    }
    ds.edges.emplace_back(std::min(a, c), std::max(a, c));
  }
  std::sort(ds.edges.begin(), ds.edges.end());
  const auto last = std::unique(ds.edges.begin(), ds.edges.end());
  ds.stats.duplicate_edges += static_cast<std::size_t>(ds.edges.end() - last);
  ds.edges.erase(last, ds.edges.end());
  if (ds.edges.empty()) ds.stats.warnings.push_back("citation graph has no edges; every paper is isolated");
  if (ds.annotated_count() == 0) throw InputError("dataset has no paper with keywords");
  return ds;
}

}  // namespace

std::size_t CitationDataset::annotated_count() const {
  return static_cast<std::size_t>(
      std::count_if(papers.begin(), papers.end(), [](const Paper& p) { return p.annotated(); }));
}

std::optional<NodeId> CitationDataset::index_of(std::string_view id) const {
  const std::string key = normalize_paper_id(id);
  const auto it = std::lower_bound(ids.begin(), ids.end(), key, numeric_less);
  if (it == ids.end() || *it != key) return std::nullopt;
  return static_cast<NodeId>(it - ids.begin());
}

std::string normalize_paper_id(std::string_view id) {
  while (!id.empty() && is_space(id.front())) id.remove_prefix(1);
  while (!id.empty() && is_space(id.back())) id.remove_suffix(1);
  std::size_t zeros = 0;
  while (zeros + 1 < id.size() && id[zeros] == '0') ++zeros;
  return std::string(id.substr(zeros));
}

std::string normalize_keyword(std::string_view keyword) {
  constexpr std::string_view kSurrounding = ".,;:!?\"'`";
  std::string kw = fold(keyword);
  std::size_t begin = 0;
  std::size_t end = kw.size();
  while (begin < end && (kw[begin] == ' ' || kSurrounding.find(kw[begin]) != std::string_view::npos)) ++begin;
  while (end > begin && (kw[end - 1] == ' ' || kSurrounding.find(kw[end - 1]) != std::string_view::npos)) --end;
  return kw.substr(begin, end - begin);
}

CitationDataset make_dataset(const std::map<std::string, Paper>& papers,
                             const std::vector<std::pair<std::string, std::string>>& citations) {
  Builder b;
  for (const auto& [id, paper] : papers) {
    Paper& p = b.papers[normalize_paper_id(id)];
    p.title = paper.title;
    p.abstract = paper.abstract;
    std::string joined;
    for (const auto& kw : paper.keywords) joined += kw + ";";
    p.keywords = split_keywords(joined);
  }
  for (const auto& [u, v] : citations) b.citations.emplace_back(normalize_paper_id(u), normalize_paper_id(v));
  return finish(std::move(b), {});
}

std::pair<std::string, std::string> parse_abstract_file(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  std::vector<std::size_t> separators;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view t = lines[i];
    while (!t.empty() && is_space(t.back())) t.remove_suffix(1);
    if (t == "\\\\") separators.push_back(i);
  }
  if (separators.size() < 2) return {"", fold(text)};

  std::string title;
  bool in_title = false;
  for (std::size_t i = separators[0] + 1; i < separators[1]; ++i) {
    const std::string_view line = lines[i];
    if (line.rfind("Title:", 0) == 0) {
      title = std::string(line.substr(6));
      in_title = true;
    } else if (in_title && !line.empty() && is_space(line.front())) {
      title += " " + std::string(line);
    } else {
      in_title = false;
    }
  }
  const std::size_t stop = separators.size() >= 3 ? separators[2] : lines.size();
  std::string abstract;
  for (std::size_t i = separators[1] + 1; i < stop; ++i) {
    abstract += lines[i];
    abstract += '\n';
  }
  return {fold(title), fold(abstract)};
}

CitationDataset load_dataset(const DatasetPaths& paths) {
  for (const auto& p : {paths.edges, paths.keywords}) {
    if (!std::filesystem::is_regular_file(p)) throw InputError("missing input file: " + p.string());
  }
  if (!std::filesystem::is_directory(paths.abstracts)) {
    throw InputError("missing abstracts directory: " + paths.abstracts.string());
  }
  Builder b;
  LoadStats stats;

  {
    std::ifstream in(paths.edges);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      ++stats.edge_lines;
      std::istringstream fields(line);
      std::string u, v, extra;
      const auto digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
      };
      if (!(fields >> u >> v) || (fields >> extra) || !digits(u) || !digits(v)) {
        ++stats.malformed_edge_lines;
        continue;
      }
      b.citations.emplace_back(normalize_paper_id(u), normalize_paper_id(v));
    }
  }

  {
    std::ifstream in(paths.keywords);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      ++stats.keyword_lines;
      const auto tab = line.find('\t');
      const std::string id = tab == std::string::npos ? "" : normalize_paper_id(line.substr(0, tab));
      if (id.empty() || id.find_first_of(" \t") != std::string::npos) {
        ++stats.malformed_keyword_lines;
        continue;
      }
      auto& kws = b.papers[id].keywords;
      for (auto& kw : split_keywords(std::string_view(line).substr(tab + 1))) {
        if (std::find(kws.begin(), kws.end(), kw) == kws.end()) kws.push_back(std::move(kw));
      }
    }
  }

  // Abstracts only attach text to papers already known from edges or keywords.
  std::set<std::string> cited;
  for (const auto& [u, v] : b.citations) {
    cited.insert(u);
    cited.insert(v);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(paths.abstracts)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::set<std::string> seen;
  std::size_t unmatched = 0;
  for (const auto& file : files) {
    const auto ext = file.extension();
    if (ext != ".abs" && ext != ".txt") continue;
    ++stats.abstract_files;
    const std::string id = normalize_paper_id(file.stem().string());
    if (id.empty() || !seen.insert(id).second) {
      ++stats.malformed_abstracts;
      continue;
    }
    if (!cited.contains(id) && !b.papers.contains(id)) {
      ++unmatched;
      continue;
    }
    auto [title, abstract] = parse_abstract_file(read_file(file));
    if (title.empty() && abstract.empty()) ++stats.malformed_abstracts;
    Paper& p = b.papers[id];
    p.title = std::move(title);
    p.abstract = std::move(abstract);
  }
  if (unmatched > 0) {
    stats.warnings.push_back(std::to_string(unmatched) + " abstract files name papers outside the citation graph");
  }
  return finish(std::move(b), std::move(stats));
}

double partition_modularity(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
                            const CommunityPartition& partition) {
  if (edges.empty()) throw MetricError("modularity is undefined without edges");
  const auto owner = partition.membership(node_count);
  std::vector<double> internal(partition.size(), 0.0);
  std::vector<double> volume(partition.size(), 0.0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw InputError("edge references unknown node");
    volume[owner[u]] += 1.0;
    volume[owner[v]] += 1.0;
    if (owner[u] == owner[v]) internal[owner[u]] += 1.0;
  }
  const double m = static_cast<double>(edges.size());
  double q = 0.0;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    const double share = volume[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

namespace {

// Modularity gain of a merge scaled by 2 m^2: 2 m w_ij - vol_i vol_j, exact in integers.
struct Candidate {
  std::int64_t key = 0;
  NodeId lo = 0;
  NodeId hi = 0;
  NodeId owner = 0;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.key != b.key) return a.key < b.key;
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.hi > b.hi;
  }
};

class Agglomeration {
 public:
  Agglomeration(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges)
      : two_m_(2 * static_cast<std::int64_t>(edges.size())),
        volume_(n, 0),
        adjacency_(n),
        members_(n),
        alive_(n, 1),
        best_(n) {
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) throw InputError("edge references unknown node");
      if (u == v) throw InputError("self-loop in citation graph");
      ++volume_[u];
      ++volume_[v];
      adjacency_[u].emplace_back(v, 1);
      adjacency_[v].emplace_back(u, 1);
    }
    for (NodeId v = 0; v < n; ++v) {
      members_[v] = {v};
      auto& adj = adjacency_[v];
      std::sort(adj.begin(), adj.end());
      std::vector<std::pair<NodeId, std::int64_t>> merged;
      for (const auto& [u, w] : adj) {
        if (!merged.empty() && merged.back().first == u) {
          merged.back().second += w;
        } else {
          merged.emplace_back(u, w);
        }
      }
      adj = std::move(merged);
      rescan(v);
    }
  }

  std::size_t run() {
    std::size_t merges = 0;
    while (!heap_.empty()) {
      const Candidate top = heap_.top();
      heap_.pop();
      if (!valid(top)) continue;
      if (top.key <= 0) break;
      merge(top.lo, top.hi);
      ++merges;
    }
    return merges;
  }

  CommunityPartition partition() {
    CommunityPartition p;
    for (NodeId c = 0; c < alive_.size(); ++c) {
      if (!alive_[c]) continue;
      std::sort(members_[c].begin(), members_[c].end());
      p.blocks.push_back(std::move(members_[c]));
    }
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return p;
  }

 private:
  struct Best {
    bool present = false;
    std::int64_t key = 0;
    NodeId partner = 0;
  };

  std::int64_t key(NodeId i, NodeId j, std::int64_t w) const { return two_m_ * w - volume_[i] * volume_[j]; }

  bool valid(const Candidate& c) const {
    const Best& b = best_[c.owner];
    const NodeId other = c.owner == c.lo ? c.hi : c.lo;
    return alive_[c.owner] && b.present && b.key == c.key && b.partner == other;
  }

  void publish(NodeId i) {
    const Best& b = best_[i];
    if (b.present) heap_.push({b.key, std::min(i, b.partner), std::max(i, b.partner), i});
  }

  void rescan(NodeId i) {
    Best next;
    for (const auto& [j, w] : adjacency_[i]) {
      const std::int64_t k = key(i, j, w);
      if (!next.present || k > next.key || (k == next.key && j < next.partner)) next = {true, k, j};
    }
    const Best& cur = best_[i];
    const bool changed = next.present != cur.present || next.key != cur.key || next.partner != cur.partner;
    best_[i] = next;
    if (changed) publish(i);
  }

  // Points x's entry for `gone` at `keep` with weight w.
  void redirect(NodeId x, NodeId gone, NodeId keep, std::int64_t w) {
    auto& adj = adjacency_[x];
    const auto by_id = [](const auto& e, NodeId id) { return e.first < id; };
    auto it = std::lower_bound(adj.begin(), adj.end(), gone, by_id);
    if (it != adj.end() && it->first == gone) adj.erase(it);
    it = std::lower_bound(adj.begin(), adj.end(), keep, by_id);
    if (it != adj.end() && it->first == keep) {
      it->second = w;
    } else {
      adj.insert(it, {keep, w});
    }
  }

  void merge(NodeId a, NodeId b) {
    // The community with more neighbors survives, ties to the smaller id.
    const bool a_keeps = adjacency_[a].size() > adjacency_[b].size() ||
                         (adjacency_[a].size() == adjacency_[b].size() && a < b);
    const NodeId keep = a_keeps ? a : b;
    const NodeId gone = a_keeps ? b : a;

    std::vector<std::pair<NodeId, std::int64_t>> merged;
    const auto& x = adjacency_[keep];
    const auto& y = adjacency_[gone];
    merged.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      std::pair<NodeId, std::int64_t> e;
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        e = x[i++];
      } else if (i == x.size() || y[j].first < x[i].first) {
        e = y[j++];
      } else {
        e = {x[i].first, x[i].second + y[j].second};
        ++i;
        ++j;
      }
      if (e.first != keep && e.first != gone) merged.push_back(e);
    }
    adjacency_[keep] = std::move(merged);
    adjacency_[gone].clear();
    adjacency_[gone].shrink_to_fit();
    volume_[keep] += volume_[gone];
    alive_[gone] = 0;
    best_[gone] = {};
    auto& into = members_[keep];
    into.insert(into.end(), members_[gone].begin(), members_[gone].end());
    members_[gone].clear();
    members_[gone].shrink_to_fit();

    for (const auto& [nb, w] : adjacency_[keep]) {
      redirect(nb, gone, keep, w);
      const Best& cur = best_[nb];
      if (cur.partner == keep || cur.partner == gone) {
        rescan(nb);
        continue;
      }
      const std::int64_t k = key(nb, keep, w);
      if (!cur.present || k > cur.key || (k == cur.key && keep < cur.partner)) {
        best_[nb] = {true, k, keep};
        publish(nb);
      }
    }
    best_[keep] = {};
    rescan(keep);
  }

  std::int64_t two_m_;
  std::vector<std::int64_t> volume_;
  std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adjacency_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<std::uint8_t> alive_;
  std::vector<Best> best_;
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap_;
};

}  // namespace

DetectedCommunities detect_communities(std::size_t node_count,
                                       const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Agglomeration agg(node_count, edges);
  DetectedCommunities out;
  out.merges = agg.run();
  out.partition = agg.partition();
  if (!edges.empty()) out.modularity = partition_modularity(node_count, edges, out.partition);
  return out;
}

DetectedCommunities detect_communities(const CitationDataset& dataset) {
  return detect_communities(dataset.size(), dataset.edges);
}

std::vector<CommonFeatures> common_features(const CommunityPartition& partition, const CitationDataset& dataset,
                                            std::size_t k) {
  if (k == 0) throw InputError("k must be at least 1");
  std::vector<CommonFeatures> out(partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c) {
    std::map<std::string, std::size_t> freq;
    for (NodeId v : partition.blocks[c]) {
      if (v >= dataset.size()) throw InputError("partition references unknown paper");
      for (const auto& kw : dataset.papers[v].keywords) ++freq[kw];
    }
    out[c].community = c;
    out[c].top.reserve(freq.size());
    for (const auto& [kw, n] : freq) out[c].top.push_back({kw, n});
    // The map is already in keyword order, so a stable sort on count keeps ties lexicographic.
    std::stable_sort(out[c].top.begin(), out[c].top.end(),
                     [](const KeywordCount& a, const KeywordCount& b) { return a.count > b.count; });
    if (out[c].top.size() > k) out[c].top.resize(k);
  }
  return out;
}

namespace {

// Both arguments already folded.
bool contains_folded(std::string_view t, std::string_view p) {
  if (p.empty()) return false;
  const bool word_start = is_alnum(p.front());
  const bool word_end = is_alnum(p.back());
  for (std::size_t pos = t.find(p); pos != std::string::npos; pos = t.find(p, pos + 1)) {
    const std::size_t end = pos + p.size();
    if (word_start && pos > 0 && is_alnum(t[pos - 1])) continue;
    if (word_end && end < t.size() && is_alnum(t[end])) continue;
    return true;
  }
  return false;
}

}  // namespace

bool contains_phrase(std::string_view text, std::string_view phrase) {
  return contains_folded(fold(text), fold(phrase));
}

PredictionCurve predict_and_confirm(const CommunityPartition& partition, const CitationDataset& dataset,
                                    std::size_t k_max) {
  if (k_max == 0) throw InputError("k_max must be at least 1");
  const auto features = common_features(partition, dataset, k_max);
  const std::size_t blocks = partition.size();

  // Per community and rank r (0-based): predictions, confirmations, and papers
  // whose first confirmation sits at rank r.
  std::vector<std::vector<std::size_t>> predicted(blocks), confirmed(blocks), first_hit(blocks);
  std::vector<std::size_t> targets(blocks, 0);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t c = 0; c < blocks; ++c) {
    const auto& cf = features[c].top;
    if (cf.empty()) continue;
    predicted[c].assign(cf.size(), 0);
    confirmed[c].assign(cf.size(), 0);
    first_hit[c].assign(cf.size(), 0);
    for (NodeId v : partition.blocks[c]) {
      const Paper& paper = dataset.papers[v];
      if (paper.annotated()) continue;
      ++targets[c];
      bool hit = false;
      for (std::size_t r = 0; r < cf.size(); ++r) {
        ++predicted[c][r];
        const std::string& kw = cf[r].keyword;
        if (contains_folded(paper.title, kw) || contains_folded(paper.abstract, kw)) {
          ++confirmed[c][r];
          if (!hit) ++first_hit[c][r];
          hit = true;
        }
      }
    }
  }

  PredictionCurve curve;
  std::vector<std::size_t> p(k_max, 0), q(k_max, 0), f(k_max, 0);
  for (std::size_t c = 0; c < blocks; ++c) {
    curve.target_papers += targets[c];
    for (std::size_t r = 0; r < predicted[c].size(); ++r) {
      p[r] += predicted[c][r];
      q[r] += confirmed[c][r];
      f[r] += first_hit[c][r];
    }
  }
  CurvePoint acc;
  for (std::size_t k = 1; k <= k_max; ++k) {
    acc.k = k;
    acc.predicted += p[k - 1];
    acc.confirmed += q[k - 1];
    acc.papers_confirmed += f[k - 1];
    curve.points.push_back(acc);
  }
  return curve;
}

std::string curve_tsv(const PredictionCurve& curve) {
  std::ostringstream out;
  out << "k\tpredicted\tconfirmed\tpapers_confirmed\n";
  for (const auto& pt : curve.points) {
    out << pt.k << '\t' << pt.predicted << '\t' << pt.confirmed << '\t' << pt.papers_confirmed << '\n';
  }
  return out.str();
}

}  // namespace homophyly
