#include "edge/game_tree.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace edge {

std::vector<int> GameTree::successors(int node) const {
  std::vector<int> out;
  for (const Arc& arc : arcs) {
    if (arc.from == node) out.push_back(arc.to);
  }
  return out;
}

GameTree game_tree(Solver& solver, bool dedup) {
  GameTree tree;
  tree.deduplicated = dedup;
  TranspositionTable table;
  const auto& limit = solver.options().node_limit;

  std::vector<GameState> states;
  std::map<std::vector<int>, int> by_coloring;
  std::map<CanonicalKey, int> by_class;

  auto intern = [&](const GameState& s, int depth) -> std::pair<int, bool> {
    if (dedup) {
      auto [it, fresh] = by_class.emplace(solver.canonicalize(s), static_cast<int>(states.size()));
      if (!fresh) return {it->second, false};
    } else {
      auto [it, fresh] = by_coloring.emplace(s.coloring().raw(), static_cast<int>(states.size()));
      if (!fresh) return {it->second, false};
    }
    if (limit && states.size() >= *limit) throw NodeLimitError(states.size());
    states.push_back(s);
    tree.nodes.push_back({s.coloring(), Classification::P, depth});
    return {static_cast<int>(states.size()) - 1, true};
  };

  intern(solver.empty_state(), 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int index = queue.front();
    queue.pop_front();
    GameState state = states[index];
    int depth = tree.nodes[index].depth;
    std::set<int> seen_targets;
    for (const Move& m : legal_moves(state)) {
      auto [target, fresh] = intern(apply_move(state, m), depth + 1);
      if (fresh) queue.push_back(target);
      if (dedup && !seen_targets.insert(target).second) continue;
      tree.arcs.push_back({index, target, m});
    }
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    tree.nodes[i].label = solver.classify(states[i], table);
  }
  return tree;
}

GameTree game_tree(std::shared_ptr<const Graph> graph, const SolveOptions& opts, bool dedup) {
  int k = resolve_colors(*graph, opts);
  Solver solver(std::move(graph), k, opts);
  return game_tree(solver, dedup);
}

std::string export_dot(const GameTree& tree) {
  std::ostringstream out;
  out << "digraph game_tree {\n";
  out << "  node [shape=box, style=filled, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    out << "  n" << i << " [label=\"" << node.coloring.str() << "\", fillcolor="
        << (node.label == Classification::P ? "yellow" : "gray") << ", style=filled];\n";
  }
  for (const auto& arc : tree.arcs) {
    out << "  n" << arc.from << " -> n" << arc.to << " [label=\"" << to_string(arc.move)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace edge
