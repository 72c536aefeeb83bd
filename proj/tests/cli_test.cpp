#include <arpa/inet.h>
#include <gtest/gtest.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "edge/http_server.hpp"
#include "httplib.h"
#include "json.hpp"

namespace edge::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args, const std::string& input = "",
               const Hooks& hooks = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err, hooks);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "edge_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

TEST(Edcn, Families) {
  Result r = run_cli({"edcn", "--family", "path:5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("edcn=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("witness="), std::string::npos);
  EXPECT_NE(run_cli({"edcn", "--family", "complete:2"}).out.find("edcn=1\n"), std::string::npos);
}

TEST(Edcn, GraphFile) {
  std::string path = temp_path("triangle.txt");
  std::ofstream(path) << "# triangle\n3\n1 2\n2 3\n1 3\n";
  Result r = run_cli({"edcn", "--graph", path});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("edcn=3\n"), std::string::npos);
}

TEST(Edcn, BadInputs) {
  EXPECT_EQ(run_cli({"edcn", "--family", "path:x"}).code, kExitDomain);
  EXPECT_EQ(run_cli({"edcn", "--graph", temp_path("missing.txt")}).code, kExitDomain);
  std::string path = temp_path("broken.txt");
  std::ofstream(path) << "3\n1 9\n";
  Result r = run_cli({"edcn", "--graph", path});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Solve, Examples) {
  Result p6 = run_cli({"solve", "--family", "path:6"});
  EXPECT_EQ(p6.code, kExitOk);
  EXPECT_EQ(p6.out.substr(0, p6.out.find('\n')), "winner=Player1");
  auto stats = nlohmann::json::parse(p6.out.substr(p6.out.find('\n') + 1));
  EXPECT_EQ(stats["k"], 3);
  EXPECT_EQ(stats["winner"], "Player1");
  EXPECT_GT(stats["nodes"].get<int>(), 0);

  EXPECT_EQ(run_cli({"solve", "--family", "path:6", "--colors", "4"}).out.substr(0, 15),
            "winner=Player2\n");
  EXPECT_EQ(run_cli({"solve", "--family", "cycle:4"}).out.substr(0, 15), "winner=Player2\n");
  EXPECT_EQ(run_cli({"solve", "--family", "moser-spindle", "--parallel"}).out.substr(0, 15),
            "winner=Player1\n");
}

TEST(Solve, FlagsDoNotChangeTheAnswer) {
  for (auto flags : std::vector<std::vector<std::string>>{
           {}, {"--no-canon"}, {"--no-auto"}, {"--no-canon", "--no-auto"}, {"--parallel"}}) {
    std::vector<std::string> args{"solve", "--family", "cycle:5"};
    args.insert(args.end(), flags.begin(), flags.end());
    EXPECT_EQ(run_cli(args).out.substr(0, 15), "winner=Player1\n");
  }
}

TEST(Solve, NodeLimitIsResourceExit) {
  Result r = run_cli({"solve", "--family", "petersen", "--node-limit", "10"});
  EXPECT_EQ(r.code, kExitLimit);
  EXPECT_NE(r.err.find("node limit"), std::string::npos);
}

TEST(Tree, DeterministicAndConsistent) {
  Result a = run_cli({"tree", "--family", "path:4"});
  Result b = run_cli({"tree", "--family", "path:4"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("digraph", 0), 0u);

  Result dedup = run_cli({"tree", "--family", "path:4", "--dedup"});
  std::regex node(R"(\n  n\d+ \[)");
  auto count = [&](const std::string& s) {
    return std::distance(std::sregex_iterator(s.begin(), s.end(), node), std::sregex_iterator());
  };
  EXPECT_LE(count(dedup.out), count(a.out));
  EXPECT_GT(count(dedup.out), 0);

  // P_4 is a first-player win, so the root is an N-position.
  EXPECT_NE(a.out.find("n0 [label=\"_,_,_,_\", fillcolor=gray"), std::string::npos);
  Result c4 = run_cli({"tree", "--family", "cycle:4", "--dedup"});
  EXPECT_NE(c4.out.find("n0 [label=\"_,_,_,_\", fillcolor=yellow"), std::string::npos);
}

TEST(Tree, WritesFile) {
  std::string path = temp_path("p3.dot");
  std::filesystem::remove(path);
  Result r = run_cli({"tree", "--family", "path:3", "--out", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), run_cli({"tree", "--family", "path:3"}).out);
}

TEST(Play, WalkthroughScript) {
  Result r = run_cli({"play", "--family", "path:5", "--colors", "3", "--position", "1,_,1,2,_"},
                     "5 1\nhint\n5 3\n");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("k=3\nboard 1,_,1,2,_\n"), std::string::npos);
  EXPECT_NE(r.out.find("Player 2> illegal move (v5,1): edge color {1,2} would repeat"),
            std::string::npos);
  EXPECT_NE(r.out.find("hint (v5,3) winning"), std::string::npos);
  EXPECT_NE(r.out.find("board 1,_,1,2,3\nPlayer 2 wins\n"), std::string::npos);
}

TEST(Play, EngineOpensAndEofExitsCleanly) {
  Result r = run_cli({"play", "--family", "path:6", "--engine", "first"}, "");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("engine plays (v2,1)"), std::string::npos);
  EXPECT_NE(r.out.find("Player 2> "), std::string::npos);
}

TEST(Play, RejectsGarbageAndQuits) {
  Result r = run_cli({"play", "--family", "path:3"}, "hello\n1\n1 1 1\nmoves\nquit\n");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("expected \"vertex color\""), std::string::npos);
  EXPECT_NE(r.out.find("(v1,1) (v1,2) (v2,1) (v2,2) (v3,1) (v3,2) "), std::string::npos);
}

TEST(Verify, JsonOneLinePerRow) {
  Result r = run_cli({"verify", "--json", "--node-limit", "1"});
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0, skipped = 0, failed = 0;
  while (std::getline(lines, line)) {
    auto doc = nlohmann::json::parse(line);
    ASSERT_TRUE(doc.contains("status"));
    skipped += doc["status"] == "SKIPPED";
    failed += doc["status"] == "FAIL";
    ++rows;
  }
  EXPECT_GT(rows, 50);
  EXPECT_GT(skipped, 0);
  EXPECT_EQ(r.code, failed > 0 ? kExitDomain : kExitLimit);
  EXPECT_EQ(run_cli({"verify", "--json"}).code, kExitDomain);
}

TEST(Usage, Errors) {
  EXPECT_EQ(run_cli({"--junk"}).code, kExitUsage);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"solve"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"solve", "--family", "path:3", "--graph", "x"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"solve", "--family", "path:3", "--colors", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"play", "--family", "path:3", "--engine", "both"}).code, kExitUsage);
  Result help = run_cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("serve"), std::string::npos);
}

TEST(Serve, HealthThenStop) {
  int status = 0;
  std::string body;
  std::thread client;
  Hooks hooks;
  hooks.on_serving = [&](service::HttpServer& server) {
    client = std::thread([&, port = server.port()] {
      httplib::Client c("127.0.0.1", port);
      if (auto res = c.Get("/api/health")) {
        status = res->status;
        body = res->body;
      }
      server.stop();
    });
  };
  Result r = run_cli({"serve", "--port", "0"}, "", hooks);
  client.join();
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("listening on http://127.0.0.1:"), std::string::npos);
  EXPECT_EQ(status, 200);
  EXPECT_EQ(nlohmann::json::parse(body)["status"], "ok");
}

TEST(Serve, PortConflictIsAnError) {
  int holder = ::socket(AF_INET, SOCK_STREAM, 0);
  ASSERT_GE(holder, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ASSERT_EQ(::bind(holder, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)), 0);
  ASSERT_EQ(::listen(holder, 1), 0);
  socklen_t len = sizeof(addr);
  ::getsockname(holder, reinterpret_cast<sockaddr*>(&addr), &len);
  Result r = run_cli({"serve", "--port", std::to_string(ntohs(addr.sin_port))});
  ::close(holder);
  EXPECT_EQ(r.code, kExitLimit);
  EXPECT_NE(r.err.find("cannot bind"), std::string::npos);
}

TEST(Serve, MissingStaticDirectory) {
  Result r = run_cli({"serve", "--port", "0", "--static", temp_path("no-such-dir")});
  EXPECT_NE(r.code, kExitOk);
  EXPECT_NE(r.err.find("static"), std::string::npos);
}

}  // namespace
}  // namespace edge::cli
