#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "edge/families.hpp"
#include "edge/graph_io.hpp"
#include "edge/http_server.hpp"
#include "edge/known_results.hpp"
#include "edge/service.hpp"
#include "httplib.h"

namespace edge::service {
namespace {

using nlohmann::json;

CreateRequest request(const json& body) { return CreateRequest::from_json(body); }

MoveRequest move_req(int vertex, int color) {
  return MoveRequest::from_json({{"vertex", vertex}, {"color", color}});
}

std::string walkthrough(SessionStore& store) {
  return store.create(request({{"family", "path:5"}, {"colors", 3}, {"position", "1,_,1,2,_"}}))["id"];
}

int api_status(const std::function<void()>& f, std::string* code = nullptr,
               json* body = nullptr) {
  try {
    f();
  } catch (const ApiError& e) {
    if (code) *code = e.code();
    if (body) *body = e.body();
    return e.status();
  }
  return 200;
}

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "edge_service_test";
  std::filesystem::create_directories(dir);
  auto path = dir / (name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(path);
  return path;
}

TEST(Session, WalkthroughView) {
  SessionStore store;
  json view = store.get(walkthrough(store));
  EXPECT_EQ(view["movesMade"], 3);
  EXPECT_EQ(view["turn"], "Player2");
  EXPECT_EQ(view["coloring"], json({1, 0, 1, 2, 0}));
  EXPECT_EQ(view["unmarkable"], json({2}));
  EXPECT_EQ(view["markable"], json({false, false, false, false, true}));
  EXPECT_EQ(view["legalMoves"], json::parse(R"([{"vertex":5,"color":2},{"vertex":5,"color":3}])"));
  EXPECT_EQ(view["palette"], json::parse("[[1,2]]"));
  EXPECT_FALSE(view["terminal"]);
  EXPECT_FALSE(view.contains("winner"));
  EXPECT_EQ(view["label"], "P_5");
  EXPECT_EQ(view["layout"].size(), 5u);
}

TEST(Session, IllegalMoveNamesDuplicatePair) {
  SessionStore store;
  std::string id = walkthrough(store);
  std::string code;
  json body;
  EXPECT_EQ(api_status([&] { store.move(id, move_req(5, 1)); }, &code, &body), 409);
  EXPECT_EQ(code, "illegal_move");
  EXPECT_EQ(body["duplicatePair"], json({1, 2}));
  EXPECT_EQ(store.get(id)["movesMade"], 3);
}

TEST(Session, WinningMoveEndsGame) {
  SessionStore store;
  std::string id = walkthrough(store);
  json hint = store.hint(id);
  EXPECT_EQ(hint["move"], json::parse(R"({"vertex":5,"color":3})"));
  EXPECT_TRUE(hint["winning"]);
  EXPECT_EQ(hint["classification"], "N");
  json view = store.move(id, move_req(5, 3));
  EXPECT_TRUE(view["terminal"]);
  EXPECT_EQ(view["winner"], "Player2");
  EXPECT_TRUE(view["legalMoves"].empty());
  EXPECT_TRUE(view["engineMoves"].empty());
  std::string code;
  EXPECT_EQ(api_status([&] { store.hint(id); }, &code), 409);
  EXPECT_EQ(code, "game_over");
  EXPECT_EQ(api_status([&] { store.move(id, move_req(2, 1)); }, &code), 409);
  EXPECT_EQ(code, "game_over");
}

TEST(Session, HintOnLosingPosition) {
  SessionStore store;
  std::string id = store.create(request({{"family", "cycle:4"}}))["id"];
  json hint = store.hint(id);
  EXPECT_FALSE(hint["winning"]);
  EXPECT_EQ(hint["classification"], "P");
}

TEST(Session, FreshBoardListsEveryPlacement) {
  SessionStore store;
  json view = store.create(request({{"family", "cycle:4"}, {"mode", "two-human"}}));
  EXPECT_EQ(view["k"], 3);
  EXPECT_EQ(view["legalMoves"].size(), 12u);
  EXPECT_EQ(view["coloring"], json({0, 0, 0, 0}));
  EXPECT_EQ(view["engine"], nullptr);
  EXPECT_EQ(view["turn"], "Player1");
}

TEST(Session, LegalMovesMatchLibrary) {
  SessionStore store;
  auto g = std::make_shared<const Graph>(build(family::Wheel{5}));
  std::string id = store.create(request({{"family", "wheel:5"}, {"history", json::parse(
      R"([{"vertex":1,"color":1},{"vertex":3,"color":2}])")}}))["id"];
  json view = store.get(id);
  GameState s = GameState::from_coloring(g, view["k"], parse_coloring("1,_,2,_,_"));
  json expected = json::array();
  for (const Move& m : legal_moves(s)) expected.push_back({{"vertex", m.vertex + 1}, {"color", m.color}});
  EXPECT_EQ(view["legalMoves"], expected);
}

TEST(Session, EngineFirstOpensPathSix) {
  SessionStore store;
  json view = store.create(request({{"family", "path:6"}, {"mode", "engine-first"}}));
  ASSERT_EQ(view["history"].size(), 1u);
  EXPECT_EQ(view["history"][0], json::parse(R"({"vertex":2,"color":1,"player":"Player1"})"));
  EXPECT_EQ(view["turn"], "Player2");
  EXPECT_EQ(view["engine"], "Player1");
}

/// Plays random human moves against the engine until the game ends.
json random_playout(SessionStore& store, const std::string& id, std::mt19937& rng) {
  json view = store.get(id);
  while (!view["terminal"]) {
    const json& moves = view["legalMoves"];
    const json& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    view = store.move(id, move_req(m["vertex"], m["color"]));
  }
  return view;
}

TEST(Session, EngineSecondWinsPathSixWithFourColors) {
  SessionStore store;
  std::mt19937 rng(7);
  for (int game = 0; game < 20; ++game) {
    std::string id = store.create(request({{"family", "path:6"}, {"colors", 4},
                                           {"mode", "engine-second"}}))["id"];
    EXPECT_EQ(random_playout(store, id, rng)["winner"], "Player2");
  }
}

TEST(Session, EngineWinsRegistryGames) {
  SessionStore store;
  std::mt19937 rng(11);
  for (const auto& row : all_known_results()) {
    if (!row.expected_winner || row.label == "T_8") continue;
    Graph g = build(row.spec);
    if (g.vertex_count() > 7 || g.vertex_count() == 0) continue;
    std::string mode = *row.expected_winner == Winner::Player1 ? "engine-first" : "engine-second";
    json body{{"graph", graph_to_json(g)}, {"mode", mode}};
    if (row.color_override) body["colors"] = *row.color_override;
    for (int game = 0; game < 3; ++game) {
      std::string id = store.create(request(body))["id"];
      EXPECT_EQ(random_playout(store, id, rng)["winner"], edge::to_string(*row.expected_winner))
          << row.label;
    }
  }
}

TEST(Session, TurnPreconditions) {
  SessionStore store;
  std::string id = store.create(request({{"family", "cycle:4"}}))["id"];
  std::string code;
  auto stale = MoveRequest::from_json({{"vertex", 1}, {"color", 1}, {"movesMade", 2}});
  EXPECT_EQ(api_status([&] { store.move(id, stale); }, &code), 409);
  EXPECT_EQ(code, "stale_state");
  auto wrong = MoveRequest::from_json({{"vertex", 1}, {"color", 1}, {"player", 2}});
  EXPECT_EQ(api_status([&] { store.move(id, wrong); }, &code), 409);
  EXPECT_EQ(code, "out_of_turn");
  auto right = MoveRequest::from_json({{"vertex", 1}, {"color", 1}, {"player", "Player1"},
                                       {"movesMade", 0}});
  EXPECT_EQ(store.move(id, right)["movesMade"], 1);
}

TEST(Session, BadRequests) {
  SessionStore store;
  std::string code;
  EXPECT_EQ(api_status([&] { request(json::array()); }, &code), 400);
  EXPECT_EQ(api_status([&] { request({{"mode", "two-human"}}); }, &code), 400);
  EXPECT_EQ(code, "bad_request");
  EXPECT_EQ(api_status([&] { request({{"family", "path:3"}, {"mode", "solo"}}); }, &code), 400);
  EXPECT_EQ(api_status([&] { store.create(request({{"family", "path"}})); }, &code), 400);
  EXPECT_EQ(code, "invalid_graph");
  EXPECT_EQ(api_status([&] { store.create(request({{"family", "path:25"}})); }, &code), 400);
  EXPECT_EQ(code, "invalid_graph");
  EXPECT_EQ(api_status([&] { store.create(request({{"family", "path:3"}, {"position", "1,_"}})); },
                       &code),
            400);
  EXPECT_EQ(api_status([&] {
              store.create(request({{"family", "path:3"}, {"colors", 2},
                                    {"history", json::parse(
                                        R"([{"vertex":1,"color":1},{"vertex":2,"color":1},
                                            {"vertex":3,"color":1}])")}}));
            },
                       &code),
            400);
  EXPECT_EQ(code, "illegal_history");
  EXPECT_EQ(api_status([&] { store.get("nope"); }, &code), 404);
  EXPECT_EQ(code, "not_found");
  EXPECT_EQ(api_status([&] { MoveRequest::from_json({{"vertex", "1"}}); }, &code), 400);
}

TEST(Session, UndoTwoHuman) {
  SessionStore store;
  std::string id = store.create(request({{"family", "cycle:4"}}))["id"];
  std::string code;
  EXPECT_EQ(api_status([&] { store.undo(id); }, &code), 409);
  EXPECT_EQ(code, "nothing_to_undo");
  store.move(id, move_req(1, 1));
  store.move(id, move_req(2, 2));
  json view = store.undo(id);
  EXPECT_EQ(view["movesMade"], 1);
  EXPECT_EQ(view["coloring"], json({1, 0, 0, 0}));
  EXPECT_EQ(view["palette"], json::array());
}

TEST(Session, UndoEngineModeRemovesReplyAndHumanMove) {
  SessionStore store;
  json view = store.create(request({{"family", "path:6"}, {"mode", "engine-first"}}));
  std::string id = view["id"];
  std::string code;
  EXPECT_EQ(api_status([&] { store.undo(id); }, &code), 409);
  EXPECT_EQ(code, "nothing_to_undo");
  view = store.move(id, move_req(5, 1));
  ASSERT_TRUE(view["terminal"] || view["movesMade"] == 3);
  if (view["terminal"]) return;
  view = store.undo(id);
  EXPECT_EQ(view["movesMade"], 1);
  EXPECT_EQ(view["history"][0]["vertex"], 2);
}

TEST(Store, SaveLoadRoundTrip) {
  auto path = temp_file("roundtrip.jsonl");
  SessionStore store;
  std::string a = walkthrough(store);
  std::string b = store.create(request({{"graph", json::parse(R"({"n":3,"edges":[[1,2],[2,3],[1,3]]})")},
                                        {"mode", "engine-second"}}))["id"];
  store.move(b, move_req(1, 1));
  store.save(path.string());

  SessionStore restored;
  LoadReport report = restored.load(path.string());
  EXPECT_EQ(report.loaded, 2);
  EXPECT_TRUE(report.warnings.empty());
  for (const std::string& id : {a, b}) {
    json before = store.get(id);
    json after = restored.get(id);
    for (const char* key : {"coloring", "history", "k", "mode", "label", "palette", "legalMoves",
                            "graph", "createdAt", "updatedAt", "terminal"}) {
      EXPECT_EQ(before[key], after[key]) << id << " " << key;
    }
  }
}

TEST(Store, LoadSkipsBadLines) {
  auto path = temp_file("corrupt.jsonl");
  {
    SessionStore store;
    walkthrough(store);
    store.save(path.string());
  }
  std::string good;
  {
    std::ifstream in(path);
    std::getline(in, good);
  }
  json bad = json::parse(good);
  bad["id"] = "illegal";
  bad["history"] = json::parse("[[1,1],[2,1],[3,1]]");
  {
    std::ofstream outf(path, std::ios::app);
    outf << "{not json\n" << bad.dump() << "\n\n" << good << "\n";
  }
  SessionStore store;
  LoadReport report = store.load(path.string());
  EXPECT_EQ(report.loaded, 1);
  ASSERT_EQ(report.warnings.size(), 3u);
  EXPECT_NE(report.warnings[0].find(":2:"), std::string::npos);
  EXPECT_NE(report.warnings[2].find("duplicate"), std::string::npos);
  EXPECT_EQ(store.size(), 1u);
}

TEST(Store, MissingFileLoadsNothing) {
  SessionStore store;
  EXPECT_EQ(store.load(temp_file("absent.jsonl").string()).loaded, 0);
}

TEST(Store, PersistsAfterMutation) {
  auto path = temp_file("persist.jsonl");
  SessionStore store;
  store.persist_to(path.string());
  std::string id = walkthrough(store);
  store.move(id, move_req(5, 3));
  SessionStore restored;
  restored.load(path.string());
  EXPECT_TRUE(restored.get(id)["terminal"]);
}

TEST(Store, RacingMovesExactlyOneWins) {
  SessionStore store;
  for (int round = 0; round < 20; ++round) {
    std::string id = store.create(request({{"family", "cycle:6"}}))["id"];
    std::atomic<int> ok{0};
    std::atomic<int> conflicts{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&, t] {
        auto req = MoveRequest::from_json(
            {{"vertex", t % 6 + 1}, {"color", 1}, {"player", "Player1"}, {"movesMade", 0}});
        try {
          store.move(id, req);
          ++ok;
        } catch (const ApiError& e) {
          if (e.status() == 409) ++conflicts;
        }
      });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(ok, 1);
    EXPECT_EQ(conflicts, 7);
    EXPECT_EQ(store.get(id)["movesMade"], 1);
  }
}

TEST(Store, ParallelSessions) {
  SessionStore store;
  std::vector<std::thread> threads;
  std::atomic<int> finished{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937 rng(t);
      std::string id = store.create(request({{"family", "path:6"}, {"mode", "engine-first"}}))["id"];
      if (random_playout(store, id, rng)["winner"] == "Player1") ++finished;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(finished, 8);
  EXPECT_EQ(store.size(), 8u);
}

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<HttpServer>(store_, ServerConfig{"127.0.0.1", 0, std::nullopt});
    port_ = server_->bind();
    thread_ = std::thread([this] { server_->run(); });
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }
  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  SessionStore store_;
  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(LiveServer, WalkthroughOverHttp) {
  auto cli = client();
  auto health = cli.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body)["status"], "ok");

  auto created = cli.Post("/api/games", R"({"family":"path:5","colors":3,"position":"1,_,1,2,_"})",
                          "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 200) << created->body;
  std::string id = json::parse(created->body)["id"];
  EXPECT_EQ(json::parse(cli.Get("/api/health")->body)["sessions"], 1);

  auto bad = cli.Post("/api/games/" + id + "/moves", R"({"vertex":5,"color":1})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 409);
  EXPECT_EQ(json::parse(bad->body)["duplicatePair"], json({1, 2}));

  auto hint = cli.Get("/api/games/" + id + "/hint");
  ASSERT_TRUE(hint);
  EXPECT_EQ(json::parse(hint->body)["move"]["color"], 3);

  auto good = cli.Post("/api/games/" + id + "/moves", R"({"vertex":5,"color":3})", "application/json");
  ASSERT_TRUE(good);
  EXPECT_EQ(good->status, 200);
  EXPECT_EQ(json::parse(good->body)["winner"], "Player2");

  auto undone = cli.Post("/api/games/" + id + "/undo", "", "application/json");
  ASSERT_TRUE(undone);
  EXPECT_EQ(json::parse(undone->body)["movesMade"], 3);

  auto state = cli.Get("/api/games/" + id);
  ASSERT_TRUE(state);
  EXPECT_EQ(state->get_header_value("Content-Type"), "application/json");
  EXPECT_FALSE(json::parse(state->body)["terminal"]);
}

TEST_F(LiveServer, ErrorBodies) {
  auto cli = client();
  auto missing = cli.Get("/api/games/doesnotexist");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"], "not_found");
  auto malformed = cli.Post("/api/games", "{oops", "application/json");
  ASSERT_TRUE(malformed);
  EXPECT_EQ(malformed->status, 400);
  EXPECT_EQ(json::parse(malformed->body)["error"], "bad_request");
}

TEST(HttpServerConfig, MissingStaticDirectory) {
  SessionStore store;
  HttpServer server(store, ServerConfig{"127.0.0.1", 0, std::string("/nonexistent/static")});
  EXPECT_THROW(server.bind(), Error);
}

}  // namespace
}  // namespace edge::service
