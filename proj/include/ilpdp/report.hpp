#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilpdp/dp_solver.hpp"
#include "ilpdp/instance.hpp"

namespace ilpdp {

struct LevelReport {
  std::size_t index = 0;
  std::uint64_t cells = 0;
  std::uint64_t finite = 0;
  std::string kernel;
  bool copied = false;
  double seconds = 0;

  bool operator==(const LevelReport&) const = default;
};

/// Outcome of one CLI run. 128-bit values travel as decimal strings in JSON.
struct RunReport {
  std::string command;
  Status status = Status::Infeasible;
  std::optional<Wide> value;
  std::optional<std::vector<Wide>> witness;
  std::string H;
  std::string H_provenance;
  std::optional<std::string> H_warning;
  std::string strategy;
  bool proximity = false;
  bool feasibility_fallback = false;
  std::int64_t K = 0;
  std::vector<std::int64_t> radii;
  std::string l1_cap;
  std::uint64_t peak_bytes = 0;
  double normalize_seconds = 0;
  double plan_seconds = 0;
  double merge_seconds = 0;
  double unbounded_seconds = 0;
  double reconstruct_seconds = 0;
  double total_seconds = 0;
  std::vector<LevelReport> levels;

  bool operator==(const RunReport&) const = default;
};

RunReport make_report(std::string command, const Solution& sol, const SolveStats& stats);

std::string report_to_json(const RunReport& r);
/// Throws std::invalid_argument on malformed JSON or missing fields.
RunReport report_from_json(const std::string& text);

std::string report_to_text(const RunReport& r);

/// 0 Optimal/Feasible, 1 Infeasible, 2 Unbounded.
int exit_code(Status s);

Status parse_status(std::string_view text);

}  // namespace ilpdp
