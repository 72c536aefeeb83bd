#pragma once

#include <string>
#include <string_view>

#include "edge/graph.hpp"
#include "json.hpp"

namespace edge {

/// Edge-list document:
///
///     # comment
///     loops          (optional; must precede the first edge)
///     5              (vertex count)
///     1 2            (one 1-based edge per line)
///
/// Throws ParseError carrying the offending line number.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph; always emits the `loops` directive when enabled.
std::string format_graph(const Graph& graph);

/// {"n": int, "edges": [[u,v],...], "loops": bool, "layout": [[x,y],...]}
/// with 1-based endpoints. `layout` is omitted when absent.
nlohmann::json graph_to_json(const Graph& graph);
Graph graph_from_json(const nlohmann::json& doc);

/// Reads a graph file: JSON when the first non-space character is '{',
/// the edge-list format otherwise.
Graph load_graph_file(const std::string& path);

}  // namespace edge
