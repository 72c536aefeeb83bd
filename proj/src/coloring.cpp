#include "edge/coloring.hpp"

#include <algorithm>
#include <sstream>

namespace edge {

std::string EdgeColor::str() const {
  return "{" + std::to_string(low) + "," + std::to_string(high) + "}";
}

std::string to_string(const Move& move) {
  return "(v" + std::to_string(move.vertex + 1) + "," + std::to_string(move.color) + ")";
}

int PartialColoring::colored_count() const {
  return static_cast<int>(std::count_if(colors_.begin(), colors_.end(),
                                        [](int c) { return c != kUncolored; }));
}

int PartialColoring::max_color() const {
  return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

std::string PartialColoring::str() const {
  std::string out;
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (i) out += ',';
    out += colors_[i] == kUncolored ? std::string("_") : std::to_string(colors_[i]);
  }
  return out;
}

PartialColoring parse_coloring(const std::string& text) {
  std::vector<int> colors;
  std::stringstream in(text);
  std::string item;
  int index = 0;
  while (std::getline(in, item, ',')) {
    ++index;
    auto first = item.find_first_not_of(' ');
    auto last = item.find_last_not_of(' ');
    std::string token = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    if (token == "_" || token == "." || token == "0") {
      colors.push_back(kUncolored);
      continue;
    }
    try {
      std::size_t used = 0;
      int c = std::stoi(token, &used);
      if (used != token.size() || c < 1) throw std::invalid_argument("");
      colors.push_back(c);
    } catch (const std::exception&) {
      throw ParseError(0, "bad color '" + token + "' at position " + std::to_string(index));
    }
  }
  return PartialColoring(std::move(colors));
}

GameState::GameState(std::shared_ptr<const Graph> graph, int k)
    : graph_(std::move(graph)), k_(k) {
  if (!graph_) throw ParameterError("graph", "null graph");
  if (k < 1 || k > kMaxColors) {
    throw ParameterError("k", "color count must be in 1.." + std::to_string(kMaxColors) +
                                  ", got " + std::to_string(k));
  }
  coloring_ = PartialColoring(graph_->vertex_count());
}

GameState GameState::from_coloring(std::shared_ptr<const Graph> graph, int k,
                                   const PartialColoring& coloring) {
  GameState state(std::move(graph), k);
  if (coloring.size() != state.graph().vertex_count()) {
    throw ParameterError("coloring", "coloring has " + std::to_string(coloring.size()) +
                                         " entries for " +
                                         std::to_string(state.graph().vertex_count()) + " vertices");
  }
  for (int v = 0; v < coloring.size(); ++v) {
    if (coloring.raw(v) < 0 || coloring.raw(v) > k) {
      throw ParameterError("coloring", "color " + std::to_string(coloring.raw(v)) +
                                           " outside 1.." + std::to_string(k));
    }
  }
  // Color vertices in index order; any order reaches the same palette.
  for (int v = 0; v < coloring.size(); ++v) {
    if (coloring.is_colored(v)) state = apply_move(state, Move{v, coloring.raw(v)});
  }
  return state;
}

std::vector<EdgeColor> GameState::palette() const {
  std::vector<EdgeColor> out;
  for (int high = 1; high <= k_; ++high) {
    for (int low = 1; low <= high; ++low) {
      if (palette_.test(EdgeColor(low, high).index())) out.emplace_back(low, high);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string describe(const Move& move, const MoveCheck& check) {
  std::string head = "illegal move " + to_string(move) + ": ";
  switch (check.violation) {
    case MoveViolation::kVertexOutOfRange: return head + "no such vertex";
    case MoveViolation::kColorOutOfRange: return head + "color outside the palette";
    case MoveViolation::kOccupied: return head + "vertex already colored";
    case MoveViolation::kDuplicatePair:
      return head + "edge color " + check.duplicate->str() + " would repeat";
    case MoveViolation::kNone: break;
  }
  return head + "unknown";
}

}  // namespace

IllegalMoveError::IllegalMoveError(Move move, MoveCheck check)
    : Error(describe(move, check)), move_(move), check_(check) {}

std::vector<EdgeColor> induced_edge_colors(const Graph& graph, const PartialColoring& coloring) {
  std::vector<EdgeColor> out;
  for (const Edge& e : graph.edges()) {
    if (coloring.is_colored(e.u) && coloring.is_colored(e.v)) {
      out.emplace_back(coloring.raw(e.u), coloring.raw(e.v));
    }
  }
  return out;
}

bool is_edge_distinguishing(const Graph& graph, const PartialColoring& coloring) {
  std::vector<EdgeColor> colors = induced_edge_colors(graph, coloring);
  std::sort(colors.begin(), colors.end());
  return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

MoveCheck check_move(const GameState& state, const Move& move) {
  const Graph& g = state.graph();
  if (move.vertex < 0 || move.vertex >= g.vertex_count()) {
    return {MoveViolation::kVertexOutOfRange, std::nullopt};
  }
  if (move.color < 1 || move.color > state.k()) {
    return {MoveViolation::kColorOutOfRange, std::nullopt};
  }
  if (state.coloring().is_colored(move.vertex)) return {MoveViolation::kOccupied, std::nullopt};

  PairSet created;
  auto add = [&](EdgeColor c) -> std::optional<MoveCheck> {
    if (state.palette_contains(c) || created.test(c.index())) {
      return MoveCheck{MoveViolation::kDuplicatePair, c};
    }
    created.set(c.index());
    return std::nullopt;
  };
  for (int u : g.neighbors(move.vertex)) {
    if (!state.coloring().is_colored(u)) continue;
    if (auto bad = add(EdgeColor(move.color, state.coloring().raw(u)))) return *bad;
  }
  if (g.has_loop(move.vertex)) {
    if (auto bad = add(EdgeColor(move.color, move.color))) return *bad;
  }
  return {};
}

bool is_legal_move(const GameState& state, const Move& move) {
  return check_move(state, move).legal();
}

std::vector<Move> legal_moves(const GameState& state) {
  std::vector<Move> moves;
  for (int v = 0; v < state.graph().vertex_count(); ++v) {
    for (int c = 1; c <= state.k(); ++c) {
      if (is_legal_move(state, {v, c})) moves.push_back({v, c});
    }
  }
  return moves;
}

GameState apply_move(const GameState& state, const Move& move) {
  MoveCheck check = check_move(state, move);
  if (!check.legal()) throw IllegalMoveError(move, check);
  GameState next = state;
  const Graph& g = state.graph();
  for (int u : g.neighbors(move.vertex)) {
    if (next.coloring_.is_colored(u)) {
      next.palette_.set(EdgeColor(move.color, next.coloring_.raw(u)).index());
    }
  }
  if (g.has_loop(move.vertex)) next.palette_.set(EdgeColor(move.color, move.color).index());
  next.coloring_.set(move.vertex, move.color);
  ++next.moves_made_;
  return next;
}

bool is_markable(const GameState& state, int vertex) {
  for (int c = 1; c <= state.k(); ++c) {
    if (is_legal_move(state, {vertex, c})) return true;
  }
  return false;
}

bool is_terminal(const GameState& state) {
  for (int v = 0; v < state.graph().vertex_count(); ++v) {
    if (is_markable(state, v)) return false;
  }
  return true;
}

std::vector<int> unmarkable_vertices(const GameState& state) {
  std::vector<int> out;
  for (int v = 0; v < state.graph().vertex_count(); ++v) {
    if (!state.coloring().is_colored(v) && !is_markable(state, v)) out.push_back(v);
  }
  return out;
}

}  // namespace edge
