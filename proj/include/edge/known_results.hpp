#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edge/families.hpp"
#include "edge/solver.hpp"

namespace edge {

/// One published winner and/or EDCN claim.
struct KnownResult {
  std::string label;  // e.g. "C^{1,3}_8"
  FamilySpec spec;
  std::optional<Winner> expected_winner;
  std::optional<int> expected_edcn;
  std::optional<int> color_override;
  std::string citation;
  /// Winner was established by computer search rather than a proof.
  bool computer_checked = false;
  /// Per-row budget for the winner search; nullopt uses the run's default.
  std::optional<std::uint64_t> node_limit;
};

/// The full registry, in table order.
const std::vector<KnownResult>& all_known_results();

enum class RowStatus { kPass, kFail, kSkipped };
const char* to_string(RowStatus status);

struct RowReport {
  std::string label;
  std::string citation;
  RowStatus status = RowStatus::kPass;
  std::optional<Winner> expected_winner;
  std::optional<Winner> actual_winner;
  std::optional<int> expected_edcn;
  std::optional<int> actual_edcn;
  int k = 0;
  std::uint64_t nodes = 0;
  std::int64_t millis = 0;
  std::string detail;
};

struct CheckReport {
  std::vector<RowReport> rows;
  bool ok() const;
  int count(RowStatus status) const;
};

/// Runs every row: EDCN when expected, winner when expected. Rows that hit
/// their node budget are SKIPPED, never PASS.
CheckReport check_all(const std::vector<KnownResult>& rows, const SolveOptions& opts = {});
CheckReport check_all(const SolveOptions& opts = {});

/// Fixed-width table preceded by a header noting excluded graphs.
void print_report(const CheckReport& report, std::ostream& out);
/// One JSON object per row.
void print_report_json(const CheckReport& report, std::ostream& out);

}  // namespace edge
