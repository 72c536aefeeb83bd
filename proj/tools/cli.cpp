#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "edge/edcn.hpp"
#include "edge/families.hpp"
#include "edge/game_tree.hpp"
#include "edge/graph_io.hpp"
#include "edge/http_server.hpp"
#include "edge/known_results.hpp"
#include "edge/service.hpp"
#include "edge/solver.hpp"

namespace edge::cli {
namespace {

constexpr const char* kPlayHelp = R"(Play protocol (stdin, one command per line):
  <vertex> <color>   color a vertex (both 1-based)
  hint               show the engine's suggestion for the side to move
  moves              list legal moves
  quit               leave the game
End of input leaves the game cleanly.)";

struct Source {
  std::string family;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--family", family, "Graph family, e.g. path:5, chorded:8,3, petersen");
    auto* g = cmd->add_option("--graph", file, "Graph file (edge list or JSON)");
    f->excludes(g);
  }

  std::shared_ptr<const Graph> load() const {
    if (!family.empty()) return std::make_shared<const Graph>(build(parse_family(family)));
    if (!file.empty()) return std::make_shared<const Graph>(load_graph_file(file));
    throw CLI::RequiredError("--family or --graph");
  }
};

struct SolveFlags {
  std::optional<int> colors;
  bool no_canon = false;
  bool no_auto = false;
  bool parallel = false;
  std::uint64_t node_limit = kDefaultNodeLimit;

  void attach(CLI::App* cmd, bool with_parallel) {
    cmd->add_option("--colors", colors, "Palette size (default: the EDCN)")->check(CLI::Range(1, kMaxColors));
    cmd->add_flag("--no-canon", no_canon, "Disable color canonicalization");
    cmd->add_flag("--no-auto", no_auto, "Disable automorphism reduction");
    if (with_parallel) cmd->add_flag("--parallel", parallel, "Split root moves across threads");
    cmd->add_option("--node-limit", node_limit, "Expanded-state budget, 0 for none")
        ->capture_default_str();
  }

  SolveOptions options() const {
    SolveOptions opts;
    opts.use_color_canonicalization = !no_canon;
    opts.use_automorphisms = !no_auto;
    opts.color_override = colors;
    opts.parallel = parallel;
    opts.node_limit = node_limit == 0 ? std::nullopt : std::optional<std::uint64_t>(node_limit);
    return opts;
  }
};

void print_unmarkable(const GameState& state, std::ostream& out) {
  std::vector<int> dead = unmarkable_vertices(state);
  if (dead.empty()) return;
  out << "unmarkable:";
  for (int v : dead) out << " v" << v + 1;
  out << "\n";
}

int player_number(Winner w) { return w == Winner::Player1 ? 1 : 2; }

Winner mover(int moves_made) { return moves_made % 2 == 0 ? Winner::Player1 : Winner::Player2; }

int play(std::shared_ptr<const Graph> graph, const SolveOptions& opts, const std::string& engine,
         const std::string& position, std::istream& in, std::ostream& out) {
  int k = resolve_colors(*graph, opts);
  Solver solver(graph, k, opts);
  TranspositionTable table;
  GameState state = position.empty() ? solver.empty_state()
                                     : GameState::from_coloring(graph, k, parse_coloring(position));
  std::optional<Winner> engine_side;
  if (engine == "first") engine_side = Winner::Player1;
  if (engine == "second") engine_side = Winner::Player2;

  out << "k=" << k << "\n";
  while (true) {
    out << "board " << state.coloring().str() << "\n";
    if (is_terminal(state)) {
      Winner w = state.moves_made() == 0 ? Winner::Player2 : mover(state.moves_made() - 1);
      out << "Player " << player_number(w) << " wins\n";
      return kExitOk;
    }
    Winner turn = mover(state.moves_made());
    if (engine_side && *engine_side == turn) {
      std::optional<BestMove> best = best_move(state, solver, table);
      state = apply_move(state, best->move);
      out << "engine plays " << to_string(best->move) << "\n";
      print_unmarkable(state, out);
      continue;
    }
    out << "Player " << player_number(turn) << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << "\n";
      return kExitOk;
    }
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "quit") return kExitOk;
    if (first == "hint") {
      std::optional<BestMove> best = best_move(state, solver, table);
      out << "hint " << to_string(best->move) << (best->winning ? " winning" : " losing") << "\n";
      continue;
    }
    if (first == "moves") {
      for (const Move& m : legal_moves(state)) out << to_string(m) << " ";
      out << "\n";
      continue;
    }
    Move m;
    std::string rest;
    try {
      m.vertex = std::stoi(first) - 1;
    } catch (const std::exception&) {
      m.vertex = -2;
    }
    if (m.vertex == -2 || !(words >> m.color) || (words >> rest)) {
      out << "expected \"vertex color\", hint, moves or quit\n";
      continue;
    }
    try {
      state = apply_move(state, m);
    } catch (const IllegalMoveError& e) {
      out << e.what() << "\n";
      continue;
    }
    print_unmarkable(state, out);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Edge-distinguishing game solver"};
  app.name("edge");
  app.require_subcommand(1);

  Source source;
  SolveFlags flags;

  auto* edcn_cmd = app.add_subcommand("edcn", "Edge-distinguishing chromatic number and a witness");
  source.attach(edcn_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Winner from the empty board");
  source.attach(solve_cmd);
  flags.attach(solve_cmd, true);

  bool dedup = false;
  std::string out_path;
  auto* tree_cmd = app.add_subcommand("tree", "Game tree as a DOT digraph");
  source.attach(tree_cmd);
  flags.attach(tree_cmd, false);
  tree_cmd->add_flag("--dedup", dedup, "Merge equivalent states");
  tree_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string engine = "none";
  std::string position;
  auto* play_cmd = app.add_subcommand("play", "Play in the terminal");
  source.attach(play_cmd);
  flags.attach(play_cmd, false);
  play_cmd->add_option("--engine", engine, "Engine side")
      ->check(CLI::IsMember({"first", "second", "none"}))
      ->capture_default_str();
  play_cmd->add_option("--position", position, "Starting coloring, e.g. 1,_,1,2,_");
  play_cmd->footer(kPlayHelp);

  bool json_out = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check every known result");
  verify_cmd->add_flag("--json", json_out, "One JSON object per row");
  verify_cmd->add_option("--node-limit", flags.node_limit, "Expanded-state budget per row, 0 for none")
      ->capture_default_str();

  service::ServerConfig server_config;
  std::string sessions_path;
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP play service");
  serve_cmd->add_option("--port", server_config.port, "Port, 0 for any free port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", server_config.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--static", static_dir, "Directory served under /");
  serve_cmd->add_option("--sessions", sessions_path, "JSON-lines session file");
  serve_cmd->add_option("--node-limit", flags.node_limit, "Engine budget per search, 0 for none")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (edcn_cmd->parsed()) {
      auto graph = source.load();
      EdcnResult result = edcn(*graph);
      out << "edcn=" << result.k << "\n";
      out << "witness=" << result.witness.str() << "\n";
      return kExitOk;
    }
    if (solve_cmd->parsed()) {
      SolveStats stats = winner(source.load(), flags.options());
      out << "winner=" << to_string(stats.winner) << "\n";
      out << stats_json(stats) << "\n";
      return kExitOk;
    }
    if (tree_cmd->parsed()) {
      std::string dot = export_dot(game_tree(source.load(), flags.options(), dedup));
      if (out_path.empty()) {
        out << dot;
      } else {
        std::ofstream file(out_path, std::ios::trunc);
        if (!file) throw Error("cannot write " + out_path);
        file << dot;
      }
      return kExitOk;
    }
    if (play_cmd->parsed()) {
      return play(source.load(), flags.options(), engine, position, in, out);
    }
    if (verify_cmd->parsed()) {
      CheckReport report = check_all(flags.options());
      if (json_out) {
        print_report_json(report, out);
      } else {
        print_report(report, out);
      }
      if (!report.ok()) return kExitDomain;
      return report.count(RowStatus::kSkipped) > 0 ? kExitLimit : kExitOk;
    }
    if (serve_cmd->parsed()) {
      service::SessionStore store(flags.options());
      if (!sessions_path.empty()) {
        service::LoadReport loaded = store.load(sessions_path);
        for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
        store.persist_to(sessions_path);
      }
      if (!static_dir.empty()) server_config.static_dir = static_dir;
      service::HttpServer server(store, server_config);
      try {
        server.bind();
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitLimit;
      }
      out << "listening on http://" << server_config.host << ":" << server.port() << std::endl;
      if (hooks.on_serving) hooks.on_serving(server);
      server.run();
      return kExitOk;
    }
  } catch (const CLI::RequiredError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NodeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace edge::cli
