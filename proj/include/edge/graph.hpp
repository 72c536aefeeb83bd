#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace edge {

/// Unordered vertex pair, stored with u <= v. u == v is a loop.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool is_loop() const { return u == v; }
  auto operator<=>(const Edge&) const = default;
};

/// Drawing coordinate for the play UI. Unit box, y grows downward.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Immutable simple undirected graph with optional loops. Vertices are
/// 0-based; user-facing I/O shifts to 1-based.
class Graph {
 public:
  Graph() = default;

  /// Throws ParameterError on out-of-range endpoints, duplicate edges, or a
  /// loop when `allows_loops` is false.
  Graph(int vertex_count, std::span<const Edge> edges, bool allows_loops = false,
        std::optional<std::vector<Point>> layout = std::nullopt);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool allows_loops() const { return allows_loops_; }

  /// Sorted ascending.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors other than `v` itself, ascending.
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  bool has_loop(int v) const { return loop_[v] != 0; }
  bool adjacent(int u, int v) const { return adjacency_[u * n_ + v] != 0; }

  /// A loop counts as one incident edge.
  int degree(int v) const {
    return static_cast<int>(neighbors_[v].size()) + (has_loop(v) ? 1 : 0);
  }

  const std::optional<std::vector<Point>>& layout() const { return layout_; }

  /// Same graph with a different layout.
  Graph with_layout(std::vector<Point> layout) const;

  /// Ignores layout.
  bool operator==(const Graph& other) const {
    return n_ == other.n_ && allows_loops_ == other.allows_loops_ &&
           edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  bool allows_loops_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<char> loop_;
  std::vector<char> adjacency_;
  std::optional<std::vector<Point>> layout_;
};

/// Circle of `n` points, first point at the top, proceeding clockwise.
std::vector<Point> circular_layout(int n);

}  // namespace edge
