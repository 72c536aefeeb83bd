#pragma once

#include <optional>

#include "edge/coloring.hpp"
#include "edge/graph.hpp"

namespace edge {

struct EdcnResult {
  int k = 1;
  /// Total edge-distinguishing k-coloring.
  PartialColoring witness;
};

/// Smallest k with k(k+1)/2 >= |E|, at least 1.
int edcn_lower_bound(const Graph& graph);

/// Total edge-distinguishing coloring with colors from 1..k, if one exists.
/// Backtracks over vertices in descending-degree order with ascending colors,
/// introducing at most one fresh color per vertex.
std::optional<PartialColoring> find_edge_distinguishing_coloring(const Graph& graph, int k);

/// Edge-distinguishing chromatic number with a witness. Edgeless graphs
/// (including the empty graph) give k = 1.
EdcnResult edcn(const Graph& graph);

}  // namespace edge
