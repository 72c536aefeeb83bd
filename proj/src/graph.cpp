#include "edge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edge/error.hpp"

namespace edge {

Graph::Graph(int vertex_count, std::span<const Edge> edges, bool allows_loops,
             std::optional<std::vector<Point>> layout)
    : n_(vertex_count), allows_loops_(allows_loops), layout_(std::move(layout)) {
  if (n_ < 0) throw ParameterError("n", "vertex count must be non-negative");
  edges_.reserve(edges.size());
  for (const Edge& raw : edges) {
    Edge e(raw.u, raw.v);
    if (e.u < 0 || e.v >= n_) {
      throw ParameterError("edges", "edge {" + std::to_string(e.u + 1) + "," +
                                        std::to_string(e.v + 1) +
                                        "} has an endpoint outside 1.." +
                                        std::to_string(n_));
    }
    if (e.is_loop() && !allows_loops_) {
      throw ParameterError("edges", "loop at vertex " + std::to_string(e.u + 1) +
                                        " but loops are not enabled");
    }
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ParameterError("edges", "duplicate edge {" + std::to_string(dup->u + 1) +
                                      "," + std::to_string(dup->v + 1) + "}");
  }
  if (layout_ && static_cast<int>(layout_->size()) != n_) {
    throw ParameterError("layout", "layout must have one point per vertex");
  }

  neighbors_.assign(n_, {});
  loop_.assign(n_, 0);
  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (const Edge& e : edges_) {
    adjacency_[e.u * n_ + e.v] = adjacency_[e.v * n_ + e.u] = 1;
    if (e.is_loop()) {
      loop_[e.u] = 1;
    } else {
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
    }
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

Graph Graph::with_layout(std::vector<Point> layout) const {
  return Graph(n_, edges_, allows_loops_, std::move(layout));
}

std::vector<Point> circular_layout(int n) {
  std::vector<Point> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double angle = 2.0 * std::numbers::pi * i / std::max(n, 1);
    points.push_back({0.5 + 0.45 * std::sin(angle), 0.5 - 0.45 * std::cos(angle)});
  }
  return points;
}

}  // namespace edge
