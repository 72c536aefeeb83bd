#include "edge/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "edge/error.hpp"

namespace edge {
namespace {

void require(bool ok, const char* parameter, const std::string& what) {
  if (!ok) throw ParameterError(parameter, what);
}

std::vector<Point> linear_layout(int n) {
  std::vector<Point> points;
  for (int i = 0; i < n; ++i) {
    points.push_back({n == 1 ? 0.5 : 0.05 + 0.9 * i / (n - 1), 0.5});
  }
  return points;
}

Graph make_path(int n) {
  require(n >= 1, "n", "path needs n >= 1, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges, false, linear_layout(n));
}

std::vector<Edge> cycle_edges(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return edges;
}

Graph make_cycle(int n) {
  require(n >= 3, "n", "cycle needs n >= 3, got " + std::to_string(n));
  return Graph(n, cycle_edges(n), false, circular_layout(n));
}

Graph make_complete(int n, bool loops) {
  require(n >= 1, "n", "complete graph needs n >= 1, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    if (loops) edges.emplace_back(i, i);
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges, loops, circular_layout(n));
}

Graph make_bipartite(int n, int m) {
  require(n >= 1, "n", "complete bipartite graph needs n >= 1, got " + std::to_string(n));
  require(m >= 1, "m", "complete bipartite graph needs m >= 1, got " + std::to_string(m));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) edges.emplace_back(i, n + j);
  }
  std::vector<Point> layout;
  auto column = [&](int count, double x) {
    for (int i = 0; i < count; ++i) {
      layout.push_back({x, count == 1 ? 0.5 : 0.1 + 0.8 * i / (count - 1)});
    }
  };
  column(n, 0.2);
  column(m, 0.8);
  return Graph(n + m, edges, false, std::move(layout));
}

Graph make_wheel(int n) {
  require(n >= 4, "n", "wheel needs n >= 4, got " + std::to_string(n));
  int rim = n - 1;
  std::vector<Edge> edges = cycle_edges(rim);
  for (int i = 0; i < rim; ++i) edges.emplace_back(i, rim);
  std::vector<Point> layout = circular_layout(rim);
  layout.push_back({0.5, 0.5});
  return Graph(n, edges, false, std::move(layout));
}

Graph make_book(int n) {
  require(n >= 3, "n", "book needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges{{0, 1}};
  std::vector<Point> layout{{0.1, 0.9}, {0.9, 0.9}};
  for (int i = 2; i < n; ++i) {
    edges.emplace_back(0, i);
    edges.emplace_back(1, i);
    layout.push_back({0.5, n == 3 ? 0.5 : 0.75 - 0.65 * (i - 2) / (n - 3)});
  }
  return Graph(n, edges, false, std::move(layout));
}

Graph make_chorded(int n, int j) {
  require(n >= 4, "n", "chorded cycle needs n >= 4, got " + std::to_string(n));
  require(j >= 3 && j <= n - 1, "j",
          "chord endpoint must satisfy 3 <= j <= n-1, got " + std::to_string(j));
  std::vector<Edge> edges = cycle_edges(n);
  edges.emplace_back(0, j - 1);
  return Graph(n, edges, false, circular_layout(n));
}

Graph make_ladder(int n) {
  require(n >= 3, "n", "triangular ladder needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  std::vector<Point> layout;
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) edges.emplace_back(i, i + 1);
    if (i + 2 < n) edges.emplace_back(i, i + 2);
    layout.push_back({0.05 + 0.9 * i / (n - 1), i % 2 == 0 ? 0.8 : 0.2});
  }
  return Graph(n, edges, false, std::move(layout));
}

// Numbering and coordinates follow the spindle drawing with v1 at the apex:
// rhombus v1,v5,v6,v4 on the left, rhombus v1,v2,v7,v3 on the right, v3-v4 base.
Graph make_moser() {
  std::vector<Edge> edges{{0, 1}, {0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 6},
                          {2, 3}, {2, 6}, {3, 4}, {3, 5}, {4, 5}};
  std::vector<Point> layout{{0.5, 0.0},   {0.9, 1.0 / 3}, {1.0, 1.0},
                            {0.0, 1.0},   {0.1, 1.0 / 3}, {0.4, 2.0 / 3},
                            {0.6, 2.0 / 3}};
  return Graph(7, edges, false, std::move(layout));
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
Graph make_petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  std::vector<Point> layout;
  for (int ring = 0; ring < 2; ++ring) {
    double r = ring == 0 ? 0.45 : 0.22;
    for (int i = 0; i < 5; ++i) {
      double angle = 2.0 * std::numbers::pi * i / 5;
      layout.push_back({0.5 + r * std::sin(angle), 0.5 - r * std::cos(angle)});
    }
  }
  return Graph(10, edges, false, std::move(layout));
}

// Q_3: vertex i is adjacent to i^1, i^2, i^4.
Graph make_cube() {
  std::vector<Edge> edges;
  for (int i = 0; i < 8; ++i) {
    for (int bit : {1, 2, 4}) {
      if (i < (i ^ bit)) edges.emplace_back(i, i ^ bit);
    }
  }
  std::vector<Point> layout(8);
  for (int i = 0; i < 8; ++i) {
    double inset = (i & 4) ? 0.3 : 0.1;
    double x = (i & 1) ? 1.0 - inset : inset;
    double y = (i & 2) ? 1.0 - inset : inset;
    layout[i] = {x, y};
  }
  return Graph(8, edges, false, std::move(layout));
}

// K_{2,2,2}: vertex i is non-adjacent only to i+3 (mod 6).
Graph make_octahedron() {
  std::vector<Edge> edges;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (j != i + 3) edges.emplace_back(i, j);
    }
  }
  return Graph(6, edges, false, circular_layout(6));
}

Graph make_named(const std::string& name) {
  if (name == "moser-spindle") return make_moser();
  if (name == "petersen") return make_petersen();
  if (name == "cube") return make_cube();
  if (name == "octahedron") return make_octahedron();
  throw ParameterError("name", "unknown named graph '" + name + "'");
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(0, "bad integer '" + std::string(text) + "' in family '" +
                            std::string(whole) + "'");
  }
  return value;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Graph build(const FamilySpec& spec) {
  return std::visit(
      Overloaded{
          [](const family::Path& s) { return make_path(s.n); },
          [](const family::Cycle& s) { return make_cycle(s.n); },
          [](const family::Complete& s) { return make_complete(s.n, false); },
          [](const family::CompleteLooped& s) { return make_complete(s.n, true); },
          [](const family::CompleteBipartite& s) { return make_bipartite(s.n, s.m); },
          [](const family::Wheel& s) { return make_wheel(s.n); },
          [](const family::Book& s) { return make_book(s.n); },
          [](const family::ChordedCycle& s) { return make_chorded(s.n, s.j); },
          [](const family::TriangularLadder& s) { return make_ladder(s.n); },
          [](const family::Named& s) { return make_named(s.name); },
          [](const family::Custom& s) {
            return Graph(s.n, s.edges, s.loops, circular_layout(s.n));
          },
      },
      spec);
}

FamilySpec parse_family(std::string_view text) {
  auto colon = text.find(':');
  std::string name(text.substr(0, colon));
  std::vector<int> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      params.push_back(parse_int(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto arity = [&](std::size_t expected) {
    if (params.size() != expected) {
      throw ParseError(0, "family '" + name + "' takes " + std::to_string(expected) +
                              " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "path") { arity(1); return family::Path{params[0]}; }
  if (name == "cycle") { arity(1); return family::Cycle{params[0]}; }
  if (name == "complete") { arity(1); return family::Complete{params[0]}; }
  if (name == "complete-looped" || name == "kstar") {
    arity(1);
    return family::CompleteLooped{params[0]};
  }
  if (name == "bipartite" || name == "complete-bipartite") {
    arity(2);
    return family::CompleteBipartite{params[0], params[1]};
  }
  if (name == "wheel") { arity(1); return family::Wheel{params[0]}; }
  if (name == "book") { arity(1); return family::Book{params[0]}; }
  if (name == "chorded" || name == "chorded-cycle") {
    arity(2);
    return family::ChordedCycle{params[0], params[1]};
  }
  if (name == "ladder" || name == "triangular-ladder") {
    arity(1);
    return family::TriangularLadder{params[0]};
  }
  const auto& names = named_graphs();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    arity(0);
    return family::Named{name};
  }
  throw ParseError(0, "unknown family '" + name + "'");
}

std::string to_string(const FamilySpec& spec) {
  auto num = [](int v) { return std::to_string(v); };
  return std::visit(
      Overloaded{
          [&](const family::Path& s) { return "path:" + num(s.n); },
          [&](const family::Cycle& s) { return "cycle:" + num(s.n); },
          [&](const family::Complete& s) { return "complete:" + num(s.n); },
          [&](const family::CompleteLooped& s) { return "complete-looped:" + num(s.n); },
          [&](const family::CompleteBipartite& s) {
            return "bipartite:" + num(s.n) + "," + num(s.m);
          },
          [&](const family::Wheel& s) { return "wheel:" + num(s.n); },
          [&](const family::Book& s) { return "book:" + num(s.n); },
          [&](const family::ChordedCycle& s) {
            return "chorded:" + num(s.n) + "," + num(s.j);
          },
          [&](const family::TriangularLadder& s) { return "ladder:" + num(s.n); },
          [&](const family::Named& s) { return s.name; },
          [&](const family::Custom& s) {
            return "custom(" + num(s.n) + " vertices)";
          },
      },
      spec);
}

std::string display_name(const FamilySpec& spec) {
  auto num = [](int v) { return std::to_string(v); };
  return std::visit(
      Overloaded{
          [&](const family::Path& s) { return "P_" + num(s.n); },
          [&](const family::Cycle& s) { return "C_" + num(s.n); },
          [&](const family::Complete& s) { return "K_" + num(s.n); },
          [&](const family::CompleteLooped& s) { return "K*_" + num(s.n); },
          [&](const family::CompleteBipartite& s) {
            return "K_{" + num(s.n) + "," + num(s.m) + "}";
          },
          [&](const family::Wheel& s) { return "W_" + num(s.n); },
          [&](const family::Book& s) { return "B_" + num(s.n); },
          [&](const family::ChordedCycle& s) {
            return "C^{1," + num(s.j) + "}_" + num(s.n);
          },
          [&](const family::TriangularLadder& s) { return "T_" + num(s.n); },
          [&](const family::Named& s) { return s.name; },
          [&](const family::Custom& s) { return "custom_" + num(s.n); },
      },
      spec);
}

const std::vector<std::string>& named_graphs() {
  static const std::vector<std::string> names{"moser-spindle", "petersen", "cube",
                                              "octahedron"};
  return names;
}

}  // namespace edge
