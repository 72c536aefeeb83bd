#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "edge/coloring.hpp"
#include "edge/graph.hpp"
#include "edge/symmetry.hpp"

namespace edge {

/// P: the player who just moved wins. N: the player to move wins.
enum class Classification { P, N };
enum class Winner { Player1, Player2 };

const char* to_string(Classification c);
const char* to_string(Winner w);

/// Boards the solver accepts (limited by CanonicalKey packing).
inline constexpr int kMaxSolverVertices = 24;
inline constexpr std::uint64_t kDefaultNodeLimit = 50'000'000;

struct SolveOptions {
  bool use_color_canonicalization = true;
  /// Ignored above kMaxSymmetryVertices.
  bool use_automorphisms = true;
  /// Palette size; edcn(graph) when absent.
  std::optional<int> color_override;
  /// Expanded-state budget; nullopt means unlimited.
  std::optional<std::uint64_t> node_limit = kDefaultNodeLimit;
  /// Classify root moves on separate threads.
  bool parallel = false;
};

/// Packed coloring vector (5 bits per vertex, 12 vertices per word) of a
/// state's representative. Keys are only comparable between states of the
/// same graph and k.
struct CanonicalKey {
  std::array<std::uint64_t, 2> words{};

  /// One byte per vertex, the representative's colors (0 = uncolored).
  std::vector<std::uint8_t> bytes(int vertex_count) const;
  auto operator<=>(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& key) const {
    std::uint64_t h = key.words[0] * 0x9E3779B97F4A7C15ull;
    h ^= key.words[1] + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// Memo of classifications keyed by canonical state. Write-once: racing
/// writers always store equal values. Safe for concurrent use.
class TranspositionTable {
 public:
  std::optional<Classification> find(const CanonicalKey& key);
  void insert(const CanonicalKey& key, Classification value);

  std::size_t size() const;
  std::uint64_t hits() const { return hits_.load(std::memory_order_relaxed); }
  std::uint64_t misses() const { return misses_.load(std::memory_order_relaxed); }
  void clear();

 private:
  static constexpr std::size_t kShards = 16;
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<CanonicalKey, Classification, CanonicalKeyHash> map;
  };
  std::array<Shard, kShards> shards_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

/// Symmetry data and counters shared by searches over one board and palette.
/// Build once and reuse when classifying many states of the same game.
class Solver {
 public:
  /// Throws ParameterError when the graph exceeds kMaxSolverVertices or
  /// k is outside 1..kMaxColors.
  Solver(std::shared_ptr<const Graph> graph, int k, SolveOptions opts = {});

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  int k() const { return k_; }
  const SolveOptions& options() const { return opts_; }
  /// Empty unless automorphism reduction is active.
  const std::vector<VertexPermutation>& automorphisms() const { return group_; }
  GameState empty_state() const { return GameState(graph_, k_); }

  /// Throws NodeLimitError. `state` must belong to this solver's graph and k.
  Classification classify(const GameState& state, TranspositionTable& table);

  /// Legal moves after fresh-color and coloring-stabilizer reduction.
  std::vector<Move> reduced_moves(const GameState& state) const;
  CanonicalKey canonicalize(const GameState& state) const;

  /// States expanded so far.
  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

 private:
  friend class SearchWorker;

  std::shared_ptr<const Graph> graph_;
  int k_;
  SolveOptions opts_;
  std::vector<VertexPermutation> group_;
  mutable std::atomic<std::uint64_t> nodes_{0};
};

/// One-shot forms. Each builds a Solver for the state's graph and palette.
Classification classify(const GameState& state, TranspositionTable& table,
                        const SolveOptions& opts = {});
std::vector<Move> reduced_moves(const GameState& state, const SolveOptions& opts = {});
CanonicalKey canonicalize(const GameState& state, const SolveOptions& opts = {});

struct SolveStats {
  Winner winner = Winner::Player2;
  int k = 1;
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::int64_t millis = 0;
};

/// Palette size used for `graph`: the override, or edcn(graph).
int resolve_colors(const Graph& graph, const SolveOptions& opts);

/// Classifies the empty board: N means Player 1 wins.
SolveStats winner(std::shared_ptr<const Graph> graph, const SolveOptions& opts = {});

/// {"winner":...,"k":...,"nodes":...,"tableHits":...,"millis":...}
std::string stats_json(const SolveStats& stats);

struct BestMove {
  Move move;
  /// False when every legal move leads to an N-position.
  bool winning = false;
};

/// First legal move reaching a P-position; when none exists, the first legal
/// move flagged non-winning. nullopt when no legal move exists. Moves are
/// ordered with the smallest unused color first (the "first unused color"
/// convention), then by (vertex, color).
std::optional<BestMove> best_move(const GameState& state, Solver& solver,
                                  TranspositionTable& table);
std::optional<BestMove> best_move(const GameState& state, TranspositionTable& table,
                                  const SolveOptions& opts = {});

/// True when playing `move` on the empty board yields a P-position, i.e. the
/// mover can force a win. Throws IllegalMoveError.
bool verify_strategy_start(std::shared_ptr<const Graph> graph, const SolveOptions& opts,
                           const Move& move);

}  // namespace edge
