#include "edge/solver.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "edge/edcn.hpp"
#include "json.hpp"

namespace edge {

const char* to_string(Classification c) { return c == Classification::P ? "P" : "N"; }
const char* to_string(Winner w) { return w == Winner::Player1 ? "Player1" : "Player2"; }

namespace {

constexpr int kBitsPerColor = 5;
constexpr int kVerticesPerWord = 12;
constexpr std::size_t kMaxAutomorphismGroup = 100'000;

using ColorArray = std::array<std::uint8_t, kMaxSolverVertices>;

CanonicalKey pack(const ColorArray& colors, int n) {
  CanonicalKey key;
  for (int v = 0; v < n; ++v) {
    key.words[v / kVerticesPerWord] |= std::uint64_t{colors[v]}
                                       << (kBitsPerColor * (v % kVerticesPerWord));
  }
  return key;
}

}  // namespace

std::vector<std::uint8_t> CanonicalKey::bytes(int vertex_count) const {
  std::vector<std::uint8_t> out(vertex_count);
  for (int v = 0; v < vertex_count; ++v) {
    out[v] = static_cast<std::uint8_t>(
        (words[v / kVerticesPerWord] >> (kBitsPerColor * (v % kVerticesPerWord))) & 31u);
  }
  return out;
}

// --- TranspositionTable ----------------------------------------------------

std::optional<Classification> TranspositionTable::find(const CanonicalKey& key) {
  Shard& shard = shards_[CanonicalKeyHash{}(key) % kShards];
  std::lock_guard lock(shard.mutex);
  auto it = shard.map.find(key);
  if (it == shard.map.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

void TranspositionTable::insert(const CanonicalKey& key, Classification value) {
  Shard& shard = shards_[CanonicalKeyHash{}(key) % kShards];
  std::lock_guard lock(shard.mutex);
  shard.map.emplace(key, value);
}

std::size_t TranspositionTable::size() const {
  std::size_t total = 0;
  for (const Shard& shard : shards_) {
    std::lock_guard lock(shard.mutex);
    total += shard.map.size();
  }
  return total;
}

void TranspositionTable::clear() {
  for (Shard& shard : shards_) {
    std::lock_guard lock(shard.mutex);
    shard.map.clear();
  }
  hits_ = 0;
  misses_ = 0;
}

// --- Search ------------------------------------------------------------------

/// Mutable board with apply/undo, used inside the search.
class SearchWorker {
 public:
  SearchWorker(const Solver& solver, TranspositionTable* table)
      : solver_(solver), g_(solver.graph()), n_(g_.vertex_count()), k_(solver.k()),
        table_(table) {
    move_buffers_.resize(n_ + 1);
    undo_.reserve(64);
  }

  void load(const GameState& state) {
    colors_.fill(0);
    uses_.fill(0);
    palette_ = state.palette_bits();
    for (int v = 0; v < n_; ++v) {
      int c = state.coloring().raw(v);
      colors_[v] = static_cast<std::uint8_t>(c);
      if (c != kUncolored) ++uses_[c];
    }
  }

  void apply(const Move& m) {
    undo_marks_.push_back(undo_.size());
    for (int u : g_.neighbors(m.vertex)) {
      if (colors_[u] != kUncolored) {
        int idx = EdgeColor(m.color, colors_[u]).index();
        palette_.set(idx);
        undo_.push_back(idx);
      }
    }
    if (g_.has_loop(m.vertex)) {
      int idx = EdgeColor(m.color, m.color).index();
      palette_.set(idx);
      undo_.push_back(idx);
    }
    colors_[m.vertex] = static_cast<std::uint8_t>(m.color);
    ++uses_[m.color];
  }

  void undo(const Move& m) {
    --uses_[m.color];
    colors_[m.vertex] = kUncolored;
    std::size_t mark = undo_marks_.back();
    undo_marks_.pop_back();
    while (undo_.size() > mark) {
      palette_.reset(undo_.back());
      undo_.pop_back();
    }
  }

  void generate(std::vector<Move>& out) const {
    out.clear();
    const SolveOptions& opts = solver_.options();
    const auto& group = solver_.automorphisms();

    stabilizer_.clear();
    if (!group.empty()) {
      for (std::size_t s = 1; s < group.size(); ++s) {
        const auto& images = group[s].images();
        bool fixes = true;
        for (int v = 0; v < n_ && fixes; ++v) fixes = colors_[images[v]] == colors_[v];
        if (fixes) stabilizer_.push_back(&group[s]);
      }
    }

    int fresh = 0;
    if (opts.use_color_canonicalization) {
      for (int c = 1; c <= k_; ++c) {
        if (uses_[c] == 0) {
          fresh = c;
          break;
        }
      }
    }

    for (int v = 0; v < n_; ++v) {
      if (colors_[v] != kUncolored) continue;
      bool representative = true;
      for (const VertexPermutation* s : stabilizer_) {
        if (s->image(v) < v) {
          representative = false;
          break;
        }
      }
      if (!representative) continue;

      std::uint32_t neighbor_colors = 0;
      bool blocked = false;
      for (int u : g_.neighbors(v)) {
        int c = colors_[u];
        if (c == kUncolored) continue;
        if (neighbor_colors & (1u << c)) {
          blocked = true;  // two equal neighbors force a repeated pair
          break;
        }
        neighbor_colors |= 1u << c;
      }
      if (blocked) continue;
      const bool loop = g_.has_loop(v);

      for (int c = 1; c <= k_; ++c) {
        if (opts.use_color_canonicalization && uses_[c] == 0 && c != fresh) continue;
        bool ok = true;
        for (int u : g_.neighbors(v)) {
          if (colors_[u] != kUncolored && palette_.test(EdgeColor(c, colors_[u]).index())) {
            ok = false;
            break;
          }
        }
        if (ok && loop) {
          ok = !(neighbor_colors & (1u << c)) && !palette_.test(EdgeColor(c, c).index());
        }
        if (ok) out.push_back({v, c});
      }
    }
  }

  CanonicalKey key() const {
    const bool relabel = solver_.options().use_color_canonicalization;
    const auto& group = solver_.automorphisms();

    auto encode = [&](auto&& source, ColorArray& out) {
      std::array<std::uint8_t, kMaxColors + 1> map{};
      std::uint8_t next = 1;
      for (int i = 0; i < n_; ++i) {
        std::uint8_t x = source(i);
        if (relabel && x != kUncolored) {
          if (!map[x]) map[x] = next++;
          x = map[x];
        }
        out[i] = x;
      }
    };

    ColorArray best{};
    encode([&](int i) { return colors_[i]; }, best);
    if (group.size() > 1) {
      ColorArray candidate{};
      for (std::size_t s = 1; s < group.size(); ++s) {
        const auto& images = group[s].images();
        std::array<std::uint8_t, kMaxColors + 1> map{};
        std::uint8_t next = 1;
        int order = 0;  // -1 smaller, 0 equal so far
        bool worse = false;
        for (int i = 0; i < n_; ++i) {
          std::uint8_t x = colors_[images[i]];
          if (relabel && x != kUncolored) {
            if (!map[x]) map[x] = next++;
            x = map[x];
          }
          candidate[i] = x;
          if (order == 0) {
            if (x > best[i]) {
              worse = true;
              break;
            }
            if (x < best[i]) order = -1;
          }
        }
        if (!worse && order < 0) std::copy_n(candidate.begin(), n_, best.begin());
      }
    }
    return pack(best, n_);
  }

  /// True when the player to move wins (N-position).
  bool next_player_wins(int depth) {
    count_node();
    CanonicalKey k = key();
    if (auto hit = table_->find(k)) return *hit == Classification::N;

    std::vector<Move>& moves = move_buffers_[depth];
    generate(moves);
    bool wins = false;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Move m = moves[i];
      apply(m);
      bool child_wins = next_player_wins(depth + 1);
      undo(m);
      if (!child_wins) {
        wins = true;
        break;
      }
    }
    table_->insert(k, wins ? Classification::N : Classification::P);
    return wins;
  }

 private:
  void count_node() {
    std::uint64_t count = solver_.nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    const auto& limit = solver_.options().node_limit;
    if (limit && count > *limit) throw NodeLimitError(count - 1);
  }

  const Solver& solver_;
  const Graph& g_;
  int n_;
  int k_;
  TranspositionTable* table_;
  ColorArray colors_{};
  std::array<std::uint8_t, kMaxColors + 1> uses_{};
  PairSet palette_;
  std::vector<int> undo_;
  std::vector<std::size_t> undo_marks_;
  std::vector<std::vector<Move>> move_buffers_;
  mutable std::vector<const VertexPermutation*> stabilizer_;
};

// --- Solver --------------------------------------------------------------------

Solver::Solver(std::shared_ptr<const Graph> graph, int k, SolveOptions opts)
    : graph_(std::move(graph)), k_(k), opts_(std::move(opts)) {
  if (!graph_) throw ParameterError("graph", "null graph");
  if (graph_->vertex_count() > kMaxSolverVertices) {
    throw ParameterError("graph", "solver supports at most " +
                                      std::to_string(kMaxSolverVertices) + " vertices");
  }
  if (k_ < 1 || k_ > kMaxColors) {
    throw ParameterError("k", "color count must be in 1.." + std::to_string(kMaxColors));
  }
  if (opts_.use_automorphisms && graph_->vertex_count() <= kMaxSymmetryVertices) {
    try {
      group_ = edge::automorphisms(*graph_, kMaxAutomorphismGroup);
    } catch (const SizeLimitError&) {
      group_.clear();
    }
    if (group_.size() <= 1) group_.clear();
  }
}

Classification Solver::classify(const GameState& state, TranspositionTable& table) {
  if (!opts_.parallel) {
    SearchWorker worker(*this, &table);
    worker.load(state);
    return worker.next_player_wins(0) ? Classification::N : Classification::P;
  }

  SearchWorker root(*this, &table);
  root.load(state);
  CanonicalKey root_key = root.key();
  if (auto hit = table.find(root_key)) return *hit;
  std::vector<Move> moves;
  root.generate(moves);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> found{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    SearchWorker worker(*this, &table);
    worker.load(state);
    while (!found.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= moves.size()) break;
      try {
        worker.apply(moves[i]);
        bool child_wins = worker.next_player_wins(1);
        worker.undo(moves[i]);
        if (!child_wins) found = true;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        found = true;
      }
    }
  };
  unsigned threads = std::max(2u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(moves.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  Classification result = found ? Classification::N : Classification::P;
  table.insert(root_key, result);
  return result;
}

std::vector<Move> Solver::reduced_moves(const GameState& state) const {
  SearchWorker worker(*this, nullptr);
  worker.load(state);
  std::vector<Move> moves;
  worker.generate(moves);
  return moves;
}

CanonicalKey Solver::canonicalize(const GameState& state) const {
  SearchWorker worker(*this, nullptr);
  worker.load(state);
  return worker.key();
}

Classification classify(const GameState& state, TranspositionTable& table,
                        const SolveOptions& opts) {
  Solver solver(state.graph_ptr(), state.k(), opts);
  return solver.classify(state, table);
}

std::vector<Move> reduced_moves(const GameState& state, const SolveOptions& opts) {
  return Solver(state.graph_ptr(), state.k(), opts).reduced_moves(state);
}

CanonicalKey canonicalize(const GameState& state, const SolveOptions& opts) {
  return Solver(state.graph_ptr(), state.k(), opts).canonicalize(state);
}

int resolve_colors(const Graph& graph, const SolveOptions& opts) {
  if (opts.color_override) {
    if (*opts.color_override < 1) {
      throw ParameterError("colors", "color override must be at least 1");
    }
    return *opts.color_override;
  }
  return edcn(graph).k;
}

SolveStats winner(std::shared_ptr<const Graph> graph, const SolveOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  int k = resolve_colors(*graph, opts);
  Solver solver(std::move(graph), k, opts);
  TranspositionTable table;
  Classification root = solver.classify(solver.empty_state(), table);
  SolveStats stats;
  stats.winner = root == Classification::N ? Winner::Player1 : Winner::Player2;
  stats.k = k;
  stats.nodes = solver.nodes();
  stats.table_hits = table.hits();
  stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return stats;
}

std::string stats_json(const SolveStats& stats) {
  nlohmann::json doc{{"winner", to_string(stats.winner)},
                     {"k", stats.k},
                     {"nodes", stats.nodes},
                     {"tableHits", stats.table_hits},
                     {"millis", stats.millis}};
  return doc.dump();
}

std::optional<BestMove> best_move(const GameState& state, Solver& solver,
                                  TranspositionTable& table) {
  std::vector<Move> moves = legal_moves(state);
  if (moves.empty()) return std::nullopt;
  int fresh = state.coloring().max_color() + 1;
  for (int c = 1; c <= state.k(); ++c) {
    const auto& raw = state.coloring().raw();
    if (std::find(raw.begin(), raw.end(), c) == raw.end()) {
      fresh = c;
      break;
    }
  }
  std::stable_partition(moves.begin(), moves.end(),
                        [fresh](const Move& m) { return m.color == fresh; });
  for (const Move& m : moves) {
    if (solver.classify(apply_move(state, m), table) == Classification::P) {
      return BestMove{m, true};
    }
  }
  return BestMove{moves.front(), false};
}

std::optional<BestMove> best_move(const GameState& state, TranspositionTable& table,
                                  const SolveOptions& opts) {
  Solver solver(state.graph_ptr(), state.k(), opts);
  return best_move(state, solver, table);
}

bool verify_strategy_start(std::shared_ptr<const Graph> graph, const SolveOptions& opts,
                           const Move& move) {
  int k = resolve_colors(*graph, opts);
  Solver solver(std::move(graph), k, opts);
  GameState after = apply_move(solver.empty_state(), move);
  TranspositionTable table;
  return solver.classify(after, table) == Classification::P;
}

}  // namespace edge
