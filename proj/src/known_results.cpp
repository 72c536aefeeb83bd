#include "edge/known_results.hpp"

#include <chrono>
#include <iomanip>

#include "edge/edcn.hpp"
#include "json.hpp"

namespace edge {
namespace {

using family::Book;
using family::Complete;
using family::CompleteBipartite;
using family::CompleteLooped;
using family::ChordedCycle;
using family::Cycle;
using family::Named;
using family::Path;
using family::TriangularLadder;
using family::Wheel;

constexpr Winner P1 = Winner::Player1;
constexpr Winner P2 = Winner::Player2;

std::vector<KnownResult> make_registry() {
  std::vector<KnownResult> rows;
  auto add = [&](FamilySpec spec, std::optional<Winner> w, std::optional<int> edcn,
                 std::string citation, bool computer = false) {
    rows.push_back({display_name(spec), std::move(spec), w, edcn, std::nullopt,
                    std::move(citation), computer, std::nullopt});
  };

  for (int n = 2; n <= 6; ++n) {
    add(Complete{n}, P2, n == 2 ? 1 : n, "complete-graph theorem; EDCN of K_n");
  }
  for (int n = 3; n <= 6; ++n) {
    add(CompleteLooped{n}, n % 2 ? P1 : P2, n, "looped complete-graph theorem");
  }
  for (int total = 2; total <= 7; ++total) {
    for (int n = 1; n <= total / 2; ++n) {
      int m = total - n;
      add(CompleteBipartite{n, m}, total % 2 ? P1 : P2, total - 1,
          "complete bipartite theorem (n+m parity); EDCN n+m-1");
    }
  }
  for (int n = 4; n <= 7; ++n) {
    add(Wheel{n}, n % 2 ? P1 : P2, n, "wheel lemma and theorem");
  }
  for (int n = 3; n <= 6; ++n) {
    add(Book{n}, P2, n, "book lemma and theorem");
  }

  add(Path{1}, P1, std::nullopt, "summary table (paths)");
  add(Path{2}, P2, std::nullopt, "summary table (paths)");
  add(Path{3}, P1, 2, "P_3 theorem");
  add(Path{4}, P1, 2, "P_4 theorem");
  add(Path{5}, P1, 3, "P_5 theorem; EDCN of P_5");
  // The summary table lists P_6 under Player 2; the P_6 theorem says Player 1.
  add(Path{6}, P1, 3, "P_6 theorem");
  add(Path{7}, P2, std::nullopt, "summary and miscellaneous tables", true);
  {
    KnownResult row{"P_6 (k=4)", Path{6}, P2, std::nullopt, 4,
                    "color-count theorem (P_6 with one extra color)", false, std::nullopt};
    rows.push_back(std::move(row));
  }

  add(Cycle{3}, P2, 3, "cycle section (C_3 = K_3)");
  add(Cycle{4}, P2, 3, "C_4 theorem");
  add(Cycle{5}, P1, 3, "C_5 theorem");
  add(Cycle{6}, P1, 3, "C_6 theorem");
  add(Cycle{7}, P2, 4, "C_7 theorem");
  add(Cycle{8}, P2, std::nullopt, "summary and miscellaneous tables", true);

  const Winner chorded_winner[] = {P2, P1, P1, P2, P1};
  const int chorded_edcn[] = {4, 4, 4, 4, 5};
  for (int n = 4; n <= 8; ++n) {
    add(ChordedCycle{n, 3}, chorded_winner[n - 4], chorded_edcn[n - 4],
        "triangular chorded cycle table", true);
  }

  // T_1 and T_2 are K_1 and K_2; the ladder generator starts at n = 3.
  {
    KnownResult t1{"T_1", Complete{1}, P1, std::nullopt, std::nullopt,
                   "summary table (triangular ladders)", false, std::nullopt};
    KnownResult t2{"T_2", Complete{2}, P2, std::nullopt, std::nullopt,
                   "summary table (triangular ladders)", false, std::nullopt};
    rows.push_back(std::move(t1));
    rows.push_back(std::move(t2));
  }
  add(TriangularLadder{3}, P2, std::nullopt, "summary table (triangular ladders)");
  add(TriangularLadder{4}, P2, std::nullopt, "miscellaneous table");
  for (int n = 5; n <= 8; ++n) {
    add(TriangularLadder{n}, P2, std::nullopt, "miscellaneous table", true);
  }

  add(Named{"moser-spindle"}, P1, 6, "Moser Spindle theorem");
  add(Named{"petersen"}, P1, std::nullopt, "miscellaneous table", true);
  add(Named{"cube"}, P2, std::nullopt, "miscellaneous table", true);
  add(Named{"octahedron"}, P2, std::nullopt, "miscellaneous table", true);
  return rows;
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

const std::vector<KnownResult>& all_known_results() {
  static const std::vector<KnownResult> registry = make_registry();
  return registry;
}

const char* to_string(RowStatus status) {
  switch (status) {
    case RowStatus::kPass: return "PASS";
    case RowStatus::kFail: return "FAIL";
    case RowStatus::kSkipped: return "SKIPPED";
  }
  return "?";
}

bool CheckReport::ok() const { return count(RowStatus::kFail) == 0; }

int CheckReport::count(RowStatus status) const {
  int total = 0;
  for (const auto& row : rows) total += row.status == status;
  return total;
}

CheckReport check_all(const std::vector<KnownResult>& rows, const SolveOptions& opts) {
  CheckReport report;
  for (const KnownResult& row : rows) {
    auto start = std::chrono::steady_clock::now();
    RowReport out;
    out.label = row.label;
    out.citation = row.citation;
    out.expected_winner = row.expected_winner;
    out.expected_edcn = row.expected_edcn;
    try {
      auto graph = std::make_shared<const Graph>(build(row.spec));
      if (row.expected_edcn) {
        out.actual_edcn = edcn(*graph).k;
        if (*out.actual_edcn != *row.expected_edcn) {
          out.status = RowStatus::kFail;
          out.detail = "edcn " + std::to_string(*out.actual_edcn) + ", expected " +
                       std::to_string(*row.expected_edcn);
        }
      }
      if (row.expected_winner) {
        SolveOptions row_opts = opts;
        if (row.color_override) row_opts.color_override = row.color_override;
        if (row.node_limit) row_opts.node_limit = row.node_limit;
        SolveStats stats = winner(graph, row_opts);
        out.actual_winner = stats.winner;
        out.k = stats.k;
        out.nodes = stats.nodes;
        if (stats.winner != *row.expected_winner) {
          out.status = RowStatus::kFail;
          if (!out.detail.empty()) out.detail += "; ";
          out.detail += std::string("winner ") + to_string(stats.winner) + ", expected " +
                        to_string(*row.expected_winner);
        }
      } else if (out.actual_edcn) {
        out.k = *out.actual_edcn;
      }
    } catch (const NodeLimitError& e) {
      out.status = RowStatus::kSkipped;
      out.nodes = e.nodes();
      out.detail = e.what();
    } catch (const Error& e) {
      out.status = RowStatus::kFail;
      out.detail = e.what();
    }
    if (out.status == RowStatus::kFail) out.detail += " [" + row.citation + "]";
    out.millis = elapsed_ms(start);
    report.rows.push_back(std::move(out));
  }
  return report;
}

CheckReport check_all(const SolveOptions& opts) { return check_all(all_known_results(), opts); }

void print_report(const CheckReport& report, std::ostream& out) {
  out << "# Known-result verification. Excluded: Envelope graph (no definition available).\n";
  out << std::left << std::setw(14) << "graph" << std::setw(9) << "status" << std::setw(4)
      << "k" << std::setw(9) << "winner" << std::setw(9) << "expected" << std::setw(6) << "edcn"
      << std::setw(10) << "nodes" << std::setw(8) << "ms" << "detail\n";
  for (const auto& row : report.rows) {
    auto winner_text = [](const std::optional<Winner>& w) {
      return w ? std::string(to_string(*w)) : std::string("-");
    };
    std::string edcn_text = row.actual_edcn ? std::to_string(*row.actual_edcn) : "-";
    out << std::left << std::setw(14) << row.label << std::setw(9) << to_string(row.status)
        << std::setw(4) << row.k << std::setw(9) << winner_text(row.actual_winner)
        << std::setw(9) << winner_text(row.expected_winner) << std::setw(6) << edcn_text
        << std::setw(10) << row.nodes << std::setw(8) << row.millis << row.detail << "\n";
  }
  out << "# " << report.count(RowStatus::kPass) << " passed, "
      << report.count(RowStatus::kFail) << " failed, " << report.count(RowStatus::kSkipped)
      << " skipped\n";
}

void print_report_json(const CheckReport& report, std::ostream& out) {
  for (const auto& row : report.rows) {
    nlohmann::json doc{{"graph", row.label},
                       {"status", to_string(row.status)},
                       {"citation", row.citation},
                       {"k", row.k},
                       {"nodes", row.nodes},
                       {"millis", row.millis}};
    if (row.expected_winner) doc["expectedWinner"] = to_string(*row.expected_winner);
    if (row.actual_winner) doc["winner"] = to_string(*row.actual_winner);
    if (row.expected_edcn) doc["expectedEdcn"] = *row.expected_edcn;
    if (row.actual_edcn) doc["edcn"] = *row.actual_edcn;
    if (!row.detail.empty()) doc["detail"] = row.detail;
    out << doc.dump() << "\n";
  }
}

}  // namespace edge
