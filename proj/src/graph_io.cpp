#include "homophyly/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "homophyly/error.hpp"

namespace homophyly {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) +
                     "'");
  }
  return value;
}

bool skip_line(const std::string& line) { return line.empty() || line.front() == '#'; }

}  // namespace

void write_edges_tsv(std::ostream& out, const ColoredGraph& g) {
  for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
}

void write_nodes_tsv(std::ostream& out, const ColoredGraph& g) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << v << '\t' << g.color(v) << '\t' << (g.is_seed(v) ? 1 : 0) << '\t' << g.created_at(v)
        << '\n';
  }
}

ColoredGraph read_graph_tsv(std::istream& nodes, std::istream& edges) {
  ColoredGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(nodes, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() != 4) throw InputError("nodes line " + std::to_string(line_no) + ": expected 4 fields");
    const auto id = parse_number<NodeId>(f[0], line_no);
    if (id != g.node_count()) {
      throw InputError("nodes line " + std::to_string(line_no) + ": ids must be contiguous from 0");
    }
    const auto seed = parse_number<int>(f[2], line_no);
    if (seed != 0 && seed != 1) throw InputError("nodes line " + std::to_string(line_no) + ": is_seed must be 0 or 1");
    g.add_node(parse_number<ColorId>(f[1], line_no), seed == 1,
               parse_number<std::uint64_t>(f[3], line_no));
  }
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() != 2) throw InputError("edges line " + std::to_string(line_no) + ": expected 2 fields");
    g.add_edge(parse_number<NodeId>(f[0], line_no), parse_number<NodeId>(f[1], line_no));
  }
  return g;
}

ColoredGraph read_graph_tsv(const std::filesystem::path& nodes_path,
                            const std::filesystem::path& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw InputError("cannot open " + nodes_path.string());
  std::ifstream edges(edges_path);
  if (!edges) throw InputError("cannot open " + edges_path.string());
  return read_graph_tsv(nodes, edges);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace homophyly
