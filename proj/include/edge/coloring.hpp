#pragma once

#include <bitset>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edge/error.hpp"
#include "edge/graph.hpp"

namespace edge {

/// Colors are 1..k; 0 marks an uncolored vertex.
inline constexpr int kUncolored = 0;
/// Largest supported palette size.
inline constexpr int kMaxColors = 31;

/// Induced color of one edge: the multiset {low, high}, low <= high.
struct EdgeColor {
  int low = 0;
  int high = 0;

  EdgeColor() = default;
  EdgeColor(int a, int b) : low(a < b ? a : b), high(a < b ? b : a) {}

  /// Dense index over all multisets drawn from 1..kMaxColors.
  int index() const { return (high - 1) * high / 2 + (low - 1); }
  std::string str() const;
  auto operator<=>(const EdgeColor&) const = default;
};

struct Move {
  int vertex = 0;  // 0-based
  int color = 0;   // 1..k
  auto operator<=>(const Move&) const = default;
};

/// 1-based "(v5,3)" rendering.
std::string to_string(const Move& move);

/// Per-vertex optional color.
class PartialColoring {
 public:
  PartialColoring() = default;
  explicit PartialColoring(int vertex_count) : colors_(vertex_count, kUncolored) {}
  /// Raw vector with 0 for uncolored and 1..k otherwise.
  explicit PartialColoring(std::vector<int> colors) : colors_(std::move(colors)) {}

  int size() const { return static_cast<int>(colors_.size()); }
  bool is_colored(int v) const { return colors_[v] != kUncolored; }
  std::optional<int> at(int v) const {
    return is_colored(v) ? std::optional<int>(colors_[v]) : std::nullopt;
  }
  int raw(int v) const { return colors_[v]; }
  const std::vector<int>& raw() const { return colors_; }
  void set(int v, int color) { colors_[v] = color; }
  int colored_count() const;
  int max_color() const;

  /// "1,_,1,2,_"
  std::string str() const;
  bool operator==(const PartialColoring&) const = default;

 private:
  std::vector<int> colors_;
};

/// Parses the "1,_,1,2,_" rendering ('_', '.' or '0' mark uncolored).
PartialColoring parse_coloring(const std::string& text);

/// Set of induced edge colors, indexed by EdgeColor::index().
using PairSet = std::bitset<kMaxColors*(kMaxColors + 1) / 2 + 1>;

/// Position in a game of EDGe. Value type: transitions return new states.
///
/// The palette is maintained incrementally and always equals the induced edge
/// colors of the colored subgraph; every constructible state is
/// edge-distinguishing.
class GameState {
 public:
  /// Empty board. Throws ParameterError unless 1 <= k <= kMaxColors.
  GameState(std::shared_ptr<const Graph> graph, int k);

  /// Throws ParameterError on a size mismatch or a color outside 1..k, and
  /// IllegalMoveError when the coloring is not edge-distinguishing.
  static GameState from_coloring(std::shared_ptr<const Graph> graph, int k,
                                 const PartialColoring& coloring);

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  int k() const { return k_; }
  const PartialColoring& coloring() const { return coloring_; }
  int moves_made() const { return moves_made_; }

  const PairSet& palette_bits() const { return palette_; }
  bool palette_contains(const EdgeColor& c) const { return palette_.test(c.index()); }
  /// Sorted ascending.
  std::vector<EdgeColor> palette() const;

  /// Equality compares colorings only; palette and move count are derived.
  bool operator==(const GameState& other) const {
    return k_ == other.k_ && coloring_ == other.coloring_;
  }

 private:
  friend GameState apply_move(const GameState&, const Move&);

  std::shared_ptr<const Graph> graph_;
  int k_ = 1;
  PartialColoring coloring_;
  PairSet palette_;
  int moves_made_ = 0;
};

/// Why a move is rejected.
enum class MoveViolation { kNone, kVertexOutOfRange, kColorOutOfRange, kOccupied, kDuplicatePair };

struct MoveCheck {
  MoveViolation violation = MoveViolation::kNone;
  /// Set for kDuplicatePair: the edge color that would repeat.
  std::optional<EdgeColor> duplicate;
  bool legal() const { return violation == MoveViolation::kNone; }
};

class IllegalMoveError : public Error {
 public:
  IllegalMoveError(Move move, MoveCheck check);
  const Move& move() const { return move_; }
  const MoveCheck& check() const { return check_; }

 private:
  Move move_;
  MoveCheck check_;
};

/// One entry per edge whose endpoints are both colored, in edge order.
std::vector<EdgeColor> induced_edge_colors(const Graph& graph, const PartialColoring& coloring);

bool is_edge_distinguishing(const Graph& graph, const PartialColoring& coloring);

/// Legality against the incremental palette: the edge colors the move creates
/// (one per colored neighbor, plus {c,c} for a loop) must be pairwise distinct
/// and absent from the palette.
MoveCheck check_move(const GameState& state, const Move& move);
bool is_legal_move(const GameState& state, const Move& move);

/// Sorted by (vertex, color).
std::vector<Move> legal_moves(const GameState& state);

/// Throws IllegalMoveError.
GameState apply_move(const GameState& state, const Move& move);

bool is_markable(const GameState& state, int vertex);
bool is_terminal(const GameState& state);
/// Uncolored vertices with no legal color, ascending.
std::vector<int> unmarkable_vertices(const GameState& state);

}  // namespace edge
