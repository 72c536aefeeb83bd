#include "edge/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "edge/error.hpp"

namespace edge {
namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool read_int(std::istringstream& in, long long& value) {
  in >> value;
  return static_cast<bool>(in);
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool loops = false;
  int n = -1;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;

  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "loops") {
      if (!edges.empty()) throw ParseError(line_no, "'loops' must precede the edges");
      loops = true;
      continue;
    }
    std::istringstream fields{std::string(line)};
    if (n < 0) {
      long long count = 0;
      std::string extra;
      if (!read_int(fields, count) || (fields >> extra) || count < 0) {
        throw ParseError(line_no, "expected a non-negative vertex count, got '" +
                                      std::string(line) + "'");
      }
      n = static_cast<int>(count);
      continue;
    }
    long long u = 0, v = 0;
    std::string extra;
    if (!read_int(fields, u) || !read_int(fields, v) || (fields >> extra)) {
      throw ParseError(line_no, "expected 'u v', got '" + std::string(line) + "'");
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError(line_no, "endpoint out of range 1.." + std::to_string(n));
    }
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    edge_lines.push_back(line_no);
  }
  if (n < 0) throw ParseError(0, "missing vertex count");

  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].is_loop() && !loops) {
      throw ParseError(edge_lines[i], "loop at vertex " + std::to_string(edges[i].u + 1) +
                                          " without the 'loops' directive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (edges[j] == edges[i]) {
        throw ParseError(edge_lines[i], "duplicate edge {" + std::to_string(edges[i].u + 1) +
                                            "," + std::to_string(edges[i].v + 1) + "}");
      }
    }
  }
  return Graph(n, edges, loops);
}

std::string format_graph(const Graph& graph) {
  std::ostringstream out;
  if (graph.allows_loops()) out << "loops\n";
  out << graph.vertex_count() << "\n";
  for (const Edge& e : graph.edges()) out << e.u + 1 << " " << e.v + 1 << "\n";
  return out.str();
}

nlohmann::json graph_to_json(const Graph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u + 1, e.v + 1});
  nlohmann::json doc{{"n", graph.vertex_count()}, {"edges", std::move(edges)},
                     {"loops", graph.allows_loops()}};
  if (graph.layout()) {
    nlohmann::json layout = nlohmann::json::array();
    for (const Point& p : *graph.layout()) layout.push_back({p.x, p.y});
    doc["layout"] = std::move(layout);
  }
  return doc;
}

Graph graph_from_json(const nlohmann::json& doc) {
  try {
    int n = doc.at("n").get<int>();
    bool loops = doc.value("loops", false);
    std::vector<Edge> edges;
    for (const auto& pair : doc.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError(0, "each edge must be a 2-element array");
      }
      int u = pair[0].get<int>(), v = pair[1].get<int>();
      if (u < 1 || u > n || v < 1 || v > n) {
        throw ParseError(0, "edge endpoint out of range 1.." + std::to_string(n));
      }
      edges.emplace_back(u - 1, v - 1);
    }
    std::optional<std::vector<Point>> layout;
    if (doc.contains("layout") && !doc["layout"].is_null()) {
      layout.emplace();
      for (const auto& p : doc["layout"]) layout->push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return Graph(n, edges, loops, std::move(layout));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed graph JSON: ") + e.what());
  } catch (const ParameterError& e) {
    throw ParseError(0, e.what());
  }
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    return graph_from_json(doc);
  }
  return parse_graph(text);
}

}  // namespace edge
