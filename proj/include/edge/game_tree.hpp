#pragma once

#include <memory>
#include <string>
#include <vector>

#include "edge/coloring.hpp"
#include "edge/solver.hpp"

namespace edge {

/// Directed graph over game states reachable from the empty board. Node 0 is
/// the root; arcs are legal moves and always add one colored vertex.
struct GameTree {
  struct Node {
    PartialColoring coloring;
    Classification label = Classification::P;
    int depth = 0;
  };
  struct Arc {
    int from = 0;
    int to = 0;
    Move move;
  };

  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  /// True when nodes are canonical classes rather than raw colorings.
  bool deduplicated = false;

  /// Successor node indices of `node`, in arc order.
  std::vector<int> successors(int node) const;
};

/// Breadth-first expansion from the empty board. With `dedup` false, nodes are
/// distinct raw colorings and every legal move is an arc. With `dedup` true,
/// nodes are canonical classes (under `solver`'s options), each represented by
/// its first-discovered coloring, and parallel arcs between two classes are
/// merged. Node count counts against the solver's node limit.
GameTree game_tree(Solver& solver, bool dedup);
GameTree game_tree(std::shared_ptr<const Graph> graph, const SolveOptions& opts, bool dedup);

/// Deterministic DOT digraph: P nodes yellow, N nodes gray, labels show the
/// coloring vector.
std::string export_dot(const GameTree& tree);

}  // namespace edge
