#include "edge/service.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "edge/edcn.hpp"
#include "edge/families.hpp"
#include "edge/graph_io.hpp"

namespace edge::service {
namespace {

using nlohmann::json;

Winner mover_of(int index) { return index % 2 == 0 ? Winner::Player1 : Winner::Player2; }

Winner parse_player(const json& value) {
  if (value.is_number_integer()) {
    int p = value.get<int>();
    if (p == 1) return Winner::Player1;
    if (p == 2) return Winner::Player2;
  } else if (value.is_string()) {
    std::string s = value.get<std::string>();
    if (s == "Player1" || s == "1") return Winner::Player1;
    if (s == "Player2" || s == "2") return Winner::Player2;
  }
  throw ApiError(400, "bad_request", "player must be Player1 or Player2");
}

Move parse_move(const json& value) {
  if (!value.is_object() || !value.contains("vertex") || !value.contains("color") ||
      !value["vertex"].is_number_integer() || !value["color"].is_number_integer()) {
    throw ApiError(400, "bad_request", "a move needs integer \"vertex\" and \"color\"");
  }
  return {value["vertex"].get<int>() - 1, value["color"].get<int>()};
}

json move_json(const Move& m) { return {{"vertex", m.vertex + 1}, {"color", m.color}}; }

std::int64_t epoch_ms(Session::Clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

std::string iso8601(Session::Clock::time_point t) {
  std::time_t secs = Session::Clock::to_time_t(t);
  std::tm utc{};
  gmtime_r(&secs, &utc);
  auto ms = epoch_ms(t) % 1000;
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%S") << '.' << std::setfill('0') << std::setw(3)
      << ms << 'Z';
  return out.str();
}

ApiError illegal(const IllegalMoveError& e) {
  return ApiError(409, "illegal_move", e.what(), e.check().duplicate);
}

std::vector<Move> position_moves(const PartialColoring& position) {
  std::vector<Move> moves;
  for (int v = 0; v < position.size(); ++v) {
    if (position.is_colored(v)) moves.push_back({v, position.raw(v)});
  }
  return moves;
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kEngineFirst: return "engine-first";
    case Mode::kEngineSecond: return "engine-second";
    case Mode::kTwoHuman: return "two-human";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "engine-first") return Mode::kEngineFirst;
  if (text == "engine-second") return Mode::kEngineSecond;
  if (text == "two-human") return Mode::kTwoHuman;
  throw ApiError(400, "bad_request", "unknown mode '" + text + "'");
}

json ApiError::body() const {
  json doc{{"error", code_}, {"detail", what()}};
  if (duplicate_) doc["duplicatePair"] = {duplicate_->low, duplicate_->high};
  return doc;
}

CreateRequest CreateRequest::from_json(const json& body) {
  if (!body.is_object()) throw ApiError(400, "bad_request", "body must be a JSON object");
  CreateRequest req;
  if (body.contains("family") == body.contains("graph")) {
    throw ApiError(400, "bad_request", "give exactly one of \"family\" or \"graph\"");
  }
  if (body.contains("family")) {
    if (!body["family"].is_string()) throw ApiError(400, "bad_request", "family must be a string");
    req.family = body["family"].get<std::string>();
  } else {
    req.graph = body["graph"];
  }
  if (body.contains("colors") && !body["colors"].is_null()) {
    if (!body["colors"].is_number_integer()) {
      throw ApiError(400, "bad_request", "colors must be an integer");
    }
    req.colors = body["colors"].get<int>();
  }
  if (body.contains("mode")) {
    if (!body["mode"].is_string()) throw ApiError(400, "bad_request", "mode must be a string");
    req.mode = parse_mode(body["mode"].get<std::string>());
  }
  if (body.contains("history") && body.contains("position")) {
    throw ApiError(400, "bad_request", "give at most one of \"history\" or \"position\"");
  }
  if (body.contains("history")) {
    if (!body["history"].is_array()) throw ApiError(400, "bad_request", "history must be an array");
    for (const auto& m : body["history"]) req.history.push_back(parse_move(m));
  }
  if (body.contains("position")) {
    if (!body["position"].is_string()) {
      throw ApiError(400, "bad_request", "position must be a string like \"1,_,1,2,_\"");
    }
    try {
      req.position = parse_coloring(body["position"].get<std::string>());
    } catch (const Error& e) {
      throw ApiError(400, "bad_request", e.what());
    }
  }
  return req;
}

MoveRequest MoveRequest::from_json(const json& body) {
  MoveRequest req;
  req.move = parse_move(body);
  if (body.contains("player") && !body["player"].is_null()) {
    req.player = parse_player(body["player"]);
  }
  if (body.contains("movesMade") && !body["movesMade"].is_null()) {
    if (!body["movesMade"].is_number_integer()) {
      throw ApiError(400, "bad_request", "movesMade must be an integer");
    }
    req.moves_made = body["movesMade"].get<int>();
  }
  return req;
}

Session::Session(std::string id, std::shared_ptr<const Graph> graph, std::string label, int k,
                 Mode mode, const std::vector<Move>& history, const SolveOptions& opts)
    : id_(std::move(id)),
      label_(std::move(label)),
      mode_(mode),
      solver_([&] {
        try {
          return std::make_unique<Solver>(graph, k, opts);
        } catch (const ParameterError& e) {
          throw ApiError(400, "invalid_graph", e.what());
        }
      }()),
      state_(solver_->empty_state()),
      created_(Clock::now()),
      updated_(created_) {
  for (const Move& m : history) {
    try {
      state_ = apply_move(state_, m);
    } catch (const IllegalMoveError& e) {
      throw ApiError(400, "illegal_history",
                     "move " + std::to_string(history_.size() + 1) + ": " + e.what(),
                     e.check().duplicate);
    }
    history_.push_back(m);
  }
}

std::optional<Winner> Session::engine_side() const {
  switch (mode_) {
    case Mode::kEngineFirst: return Winner::Player1;
    case Mode::kEngineSecond: return Winner::Player2;
    case Mode::kTwoHuman: return std::nullopt;
  }
  return std::nullopt;
}

Winner Session::turn() const { return mover_of(state_.moves_made()); }

bool Session::engine_to_move() const {
  auto side = engine_side();
  return side && *side == turn() && !is_terminal(state_);
}

void Session::touch() { updated_ = Clock::now(); }

std::vector<Move> Session::engine_reply() {
  std::vector<Move> played;
  while (engine_to_move()) {
    std::optional<BestMove> best;
    try {
      best = best_move(state_, *solver_, table_);
    } catch (const NodeLimitError& e) {
      throw ApiError(503, "resource_limit", e.what());
    }
    if (!best) break;
    state_ = apply_move(state_, best->move);
    history_.push_back(best->move);
    played.push_back(best->move);
  }
  if (!played.empty()) touch();
  return played;
}

std::vector<Move> Session::play(const MoveRequest& request) {
  if (is_terminal(state_)) throw ApiError(409, "game_over", "the game is over");
  if (request.moves_made && *request.moves_made != state_.moves_made()) {
    throw ApiError(409, "stale_state",
                   "expected " + std::to_string(*request.moves_made) + " moves made, found " +
                       std::to_string(state_.moves_made()));
  }
  if (request.player && *request.player != turn()) {
    throw ApiError(409, "out_of_turn", std::string("it is ") + edge::to_string(turn()) + "'s turn");
  }
  if (engine_to_move()) {
    throw ApiError(409, "out_of_turn", "it is the engine's turn");
  }
  GameState before = state_;
  try {
    state_ = apply_move(state_, request.move);
  } catch (const IllegalMoveError& e) {
    throw illegal(e);
  }
  history_.push_back(request.move);
  touch();
  try {
    return engine_reply();
  } catch (...) {
    state_ = before;
    history_.pop_back();
    throw;
  }
}

void Session::undo() {
  auto engine = engine_side();
  std::size_t keep = history_.size();
  if (!engine) {
    if (keep == 0) throw ApiError(409, "nothing_to_undo", "no moves to undo");
    --keep;
  } else {
    while (keep > 0 && mover_of(static_cast<int>(keep) - 1) == *engine) --keep;
    if (keep == 0) throw ApiError(409, "nothing_to_undo", "no human move to undo");
    --keep;
  }
  history_.resize(keep);
  GameState replay = solver_->empty_state();
  for (const Move& m : history_) replay = apply_move(replay, m);
  state_ = std::move(replay);
  touch();
}

BestMove Session::hint() {
  if (is_terminal(state_)) throw ApiError(409, "game_over", "the game is over");
  try {
    std::optional<BestMove> best = best_move(state_, *solver_, table_);
    return *best;
  } catch (const NodeLimitError& e) {
    throw ApiError(503, "resource_limit", e.what());
  }
}

json Session::view() const {
  const Graph& g = state_.graph();
  json coloring = json::array();
  json markable = json::array();
  json unmarkable = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    coloring.push_back(state_.coloring().raw(v));
    bool ok = !state_.coloring().is_colored(v) && is_markable(state_, v);
    markable.push_back(ok);
    if (!state_.coloring().is_colored(v) && !ok) unmarkable.push_back(v + 1);
  }
  json palette = json::array();
  for (const EdgeColor& c : state_.palette()) palette.push_back({c.low, c.high});
  json legal = json::array();
  for (const Move& m : legal_moves(state_)) legal.push_back(move_json(m));
  json history = json::array();
  for (std::size_t i = 0; i < history_.size(); ++i) {
    json entry = move_json(history_[i]);
    entry["player"] = edge::to_string(mover_of(static_cast<int>(i)));
    history.push_back(std::move(entry));
  }
  json graph = graph_to_json(g);
  json doc{{"id", id_},
           {"label", label_},
           {"mode", to_string(mode_)},
           {"k", state_.k()},
           {"graph", graph},
           {"layout", graph.value("layout", json::array())},
           {"coloring", std::move(coloring)},
           {"palette", std::move(palette)},
           {"legalMoves", std::move(legal)},
           {"markable", std::move(markable)},
           {"unmarkable", std::move(unmarkable)},
           {"movesMade", state_.moves_made()},
           {"history", std::move(history)},
           {"createdAt", iso8601(created_)},
           {"updatedAt", iso8601(updated_)}};
  bool terminal = is_terminal(state_);
  doc["terminal"] = terminal;
  doc["turn"] = edge::to_string(turn());
  auto engine = engine_side();
  doc["engine"] = engine ? json(edge::to_string(*engine)) : json(nullptr);
  if (terminal) {
    // Zero moves on a dead board counts as Player 2 winning.
    doc["winner"] = edge::to_string(state_.moves_made() == 0 ? Winner::Player2
                                                             : mover_of(state_.moves_made() - 1));
  }
  return doc;
}

json Session::record() const {
  json history = json::array();
  for (const Move& m : history_) history.push_back({m.vertex + 1, m.color});
  return {{"id", id_},
          {"label", label_},
          {"mode", to_string(mode_)},
          {"k", state_.k()},
          {"graph", graph_to_json(state_.graph())},
          {"history", std::move(history)},
          {"createdAt", epoch_ms(created_)},
          {"updatedAt", epoch_ms(updated_)}};
}

std::unique_ptr<Session> Session::from_record(const json& record, const SolveOptions& opts) {
  auto graph = std::make_shared<const Graph>(graph_from_json(record.at("graph")));
  std::vector<Move> history;
  for (const auto& m : record.at("history")) {
    history.push_back({m.at(0).get<int>() - 1, m.at(1).get<int>()});
  }
  auto session = std::make_unique<Session>(
      record.at("id").get<std::string>(), graph, record.value("label", "custom"),
      record.at("k").get<int>(), parse_mode(record.at("mode").get<std::string>()), history, opts);
  if (record.contains("createdAt")) {
    session->created_ = Clock::time_point(std::chrono::milliseconds(record["createdAt"].get<std::int64_t>()));
  }
  if (record.contains("updatedAt")) {
    session->updated_ = Clock::time_point(std::chrono::milliseconds(record["updatedAt"].get<std::int64_t>()));
  }
  return session;
}

SessionStore::SessionStore(SolveOptions opts) : opts_(std::move(opts)), rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id() {
  std::lock_guard lock(rng_mutex_);
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng_();
  return out.str();
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) throw ApiError(404, "not_found", "no game with id '" + id + "'");
  return it->second;
}

json SessionStore::create(const CreateRequest& request) {
  std::shared_ptr<const Graph> graph;
  std::string label = "custom";
  try {
    if (request.family) {
      FamilySpec spec = parse_family(*request.family);
      graph = std::make_shared<const Graph>(build(spec));
      label = display_name(spec);
    } else {
      Graph g = graph_from_json(*request.graph);
      if (!g.layout()) g = g.with_layout(circular_layout(g.vertex_count()));
      graph = std::make_shared<const Graph>(std::move(g));
    }
  } catch (const Error& e) {
    throw ApiError(400, "invalid_graph", e.what());
  } catch (const json::exception& e) {
    throw ApiError(400, "invalid_graph", e.what());
  }
  if (graph->vertex_count() > kMaxSolverVertices) {
    throw ApiError(400, "invalid_graph",
                   "graphs are limited to " + std::to_string(kMaxSolverVertices) + " vertices");
  }
  int k = request.colors ? *request.colors : edcn(*graph).k;
  std::vector<Move> history = request.history;
  if (request.position) {
    if (request.position->size() != graph->vertex_count()) {
      throw ApiError(400, "bad_request", "position has " + std::to_string(request.position->size()) +
                                             " entries for " +
                                             std::to_string(graph->vertex_count()) + " vertices");
    }
    history = position_moves(*request.position);
  }
  auto slot = std::make_shared<Slot>();
  slot->session =
      std::make_unique<Session>(fresh_id(), graph, label, k, request.mode, history, opts_);
  slot->session->engine_reply();
  json view = slot->session->view();
  {
    std::unique_lock lock(mutex_);
    slots_[slot->session->id()] = slot;
  }
  persist();
  return view;
}

json SessionStore::get(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return slot->session->view();
}

json SessionStore::move(const std::string& id, const MoveRequest& request) {
  auto slot = find(id);
  json view;
  {
    std::lock_guard lock(slot->mutex);
    std::vector<Move> replies = slot->session->play(request);
    view = slot->session->view();
    json engine = json::array();
    for (const Move& m : replies) engine.push_back(move_json(m));
    view["engineMoves"] = std::move(engine);
  }
  persist();
  return view;
}

json SessionStore::undo(const std::string& id) {
  auto slot = find(id);
  json view;
  {
    std::lock_guard lock(slot->mutex);
    slot->session->undo();
    view = slot->session->view();
  }
  persist();
  return view;
}

json SessionStore::hint(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  BestMove best = slot->session->hint();
  return {{"move", move_json(best.move)},
          {"winning", best.winning},
          {"classification", best.winning ? "N" : "P"}};
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return slots_.size();
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, slot] : slots_) out.push_back(id);
  return out;
}

void SessionStore::save(const std::string& path) const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, slot] : slots_) slots.push_back(slot);
  }
  std::ostringstream out;
  for (const auto& slot : slots) {
    std::lock_guard lock(slot->mutex);
    out << slot->session->record().dump() << "\n";
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw Error("cannot write " + tmp);
    file << out.str();
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot replace " + path);
}

LoadReport SessionStore::load(const std::string& path) {
  LoadReport report;
  std::ifstream file(path);
  if (!file) return report;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = path + ":" + std::to_string(number) + ": ";
    try {
      auto session = Session::from_record(json::parse(line), opts_);
      std::string id = session->id();
      auto slot = std::make_shared<Slot>();
      slot->session = std::move(session);
      std::unique_lock lock(mutex_);
      if (!slots_.emplace(id, slot).second) {
        report.warnings.push_back(where + "duplicate id '" + id + "' skipped");
        continue;
      }
      ++report.loaded;
    } catch (const std::exception& e) {
      report.warnings.push_back(where + "skipped: " + e.what());
    }
  }
  return report;
}

void SessionStore::persist_to(std::string path) { persist_path_ = std::move(path); }

void SessionStore::persist() const {
  if (!persist_path_) return;
  std::lock_guard lock(persist_mutex_);
  save(*persist_path_);
}

}  // namespace edge::service
