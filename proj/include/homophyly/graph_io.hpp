#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "homophyly/graph.hpp"

namespace homophyly {

// Edge list: one `u<TAB>v` line per edge occurrence.
// Node attributes: one `node<TAB>color<TAB>is_seed<TAB>created_at` line per node,
// is_seed written as 0/1. Both files are UTF-8 with LF endings; lines starting
// with '#' are ignored on input.

void write_edges_tsv(std::ostream& out, const ColoredGraph& g);
void write_nodes_tsv(std::ostream& out, const ColoredGraph& g);

/// Rebuilds a graph from the two TSV streams. Throws InputError on malformed
/// lines, unknown endpoints or non-contiguous node ids.
ColoredGraph read_graph_tsv(std::istream& nodes, std::istream& edges);
ColoredGraph read_graph_tsv(const std::filesystem::path& nodes_path,
                            const std::filesystem::path& edges_path);

/// Writes `content` to `path` via a sibling temporary file and rename, so a
/// reader never observes a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace homophyly
