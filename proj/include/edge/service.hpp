#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "edge/coloring.hpp"
#include "edge/solver.hpp"
#include "json.hpp"

namespace edge::service {

enum class Mode { kEngineFirst, kEngineSecond, kTwoHuman };

const char* to_string(Mode mode);
/// "engine-first", "engine-second" or "two-human".
Mode parse_mode(const std::string& text);

/// A request the service rejects. `status` is the HTTP status to answer with
/// and `code` the machine-readable error name.
class ApiError : public Error {
 public:
  ApiError(int status, std::string code, const std::string& detail,
           std::optional<EdgeColor> duplicate = std::nullopt)
      : Error(detail), status_(status), code_(std::move(code)), duplicate_(duplicate) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::optional<EdgeColor>& duplicate() const { return duplicate_; }
  /// {"error": code, "detail": text, "duplicatePair": [a,b]?}
  nlohmann::json body() const;

 private:
  int status_;
  std::string code_;
  std::optional<EdgeColor> duplicate_;
};

struct CreateRequest {
  /// Family text ("path:6") or an inline graph document; exactly one is set.
  std::optional<std::string> family;
  std::optional<nlohmann::json> graph;
  std::optional<int> colors;
  Mode mode = Mode::kTwoHuman;
  /// Starting moves, replayed before the engine gets a turn.
  std::vector<Move> history;
  /// Alternative to `history`: colored vertices are played in index order.
  std::optional<PartialColoring> position;

  /// Parses a POST /api/games body. Throws ApiError (400).
  static CreateRequest from_json(const nlohmann::json& body);
};

struct MoveRequest {
  Move move;  // 0-based vertex
  /// When set, the move is refused unless it is this player's turn.
  std::optional<Winner> player;
  /// When set, the move is refused unless exactly this many moves were made.
  std::optional<int> moves_made;

  static MoveRequest from_json(const nlohmann::json& body);
};

/// One game. Not thread-safe on its own; SessionStore serializes access.
class Session {
 public:
  using Clock = std::chrono::system_clock;

  /// Throws ApiError on an invalid graph, palette or history.
  Session(std::string id, std::shared_ptr<const Graph> graph, std::string label, int k,
          Mode mode, const std::vector<Move>& history, const SolveOptions& opts);

  const std::string& id() const { return id_; }
  Mode mode() const { return mode_; }
  const GameState& state() const { return state_; }
  const std::vector<Move>& history() const { return history_; }
  std::optional<Winner> engine_side() const;
  /// The player to move.
  Winner turn() const;

  /// Plays engine moves while it is the engine's turn and the game is live.
  /// Returns the moves played.
  std::vector<Move> engine_reply();
  /// Applies a human move, then the engine reply in engine modes.
  std::vector<Move> play(const MoveRequest& request);
  /// Removes the last move, or in engine modes every move back to and including
  /// the last human move.
  void undo();
  /// Best move for the side to move. Throws ApiError on a terminal board.
  BestMove hint();

  /// Full state view.
  nlohmann::json view() const;
  /// Persistent record: graph, k, mode, history, timestamps.
  nlohmann::json record() const;
  /// Rebuilds a session by replaying a record's history. Throws ApiError or
  /// edge::Error on any inconsistency.
  static std::unique_ptr<Session> from_record(const nlohmann::json& record,
                                              const SolveOptions& opts);

 private:
  void touch();
  bool engine_to_move() const;

  std::string id_;
  std::string label_;
  Mode mode_;
  std::unique_ptr<Solver> solver_;
  TranspositionTable table_;
  GameState state_;
  std::vector<Move> history_;
  Clock::time_point created_;
  Clock::time_point updated_;
  friend class SessionStore;
};

struct LoadReport {
  int loaded = 0;
  std::vector<std::string> warnings;
};

/// Thread-safe collection of sessions. Mutations of one session are
/// serialized by a per-session mutex; distinct sessions proceed in parallel.
class SessionStore {
 public:
  explicit SessionStore(SolveOptions opts = {});

  /// Returns the initial state view (after the engine's opening move in
  /// engine-first mode).
  nlohmann::json create(const CreateRequest& request);
  nlohmann::json get(const std::string& id) const;
  /// View after the move and any engine reply; includes "engineMoves".
  nlohmann::json move(const std::string& id, const MoveRequest& request);
  nlohmann::json undo(const std::string& id);
  /// {"move": {...}, "winning": bool, "classification": "N"|"P"}
  nlohmann::json hint(const std::string& id);

  std::size_t size() const;
  std::vector<std::string> ids() const;

  /// One JSON record per line.
  void save(const std::string& path) const;
  /// Adds every valid record; skips corrupt or inconsistent lines with a
  /// warning. A missing file loads nothing.
  LoadReport load(const std::string& path);
  /// Rewrites `path` after every successful mutation.
  void persist_to(std::string path);

 private:
  struct Slot {
    std::mutex mutex;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Slot> find(const std::string& id) const;
  std::string fresh_id();
  void persist() const;

  SolveOptions opts_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
  std::optional<std::string> persist_path_;
  mutable std::mutex persist_mutex_;
};

}  // namespace edge::service
