#pragma once

#include <optional>
#include <string>

#include "rfsmc/ct_search.hpp"
#include "rfsmc/explorer.hpp"

namespace rfsmc {

struct RunInfo {
  std::string program_name;
  Strategy strategy;
  bool exhaustive = false;
};

/// key=value stats record, one field per line.
std::string stats_text(const Verdict& verdict);

/// Human-readable verdict: outcome, stats, replayable counterexample and, if
/// given, the critical transition (">>") with its causal past ("*").
std::string verdict_text(const Program& program, const RunInfo& info, const Verdict& verdict,
                         const std::optional<CtReport>& ct = std::nullopt);

/// JSON document with the stats fields at top level.
std::string verdict_json(const Program& program, const RunInfo& info, const Verdict& verdict,
                         const std::optional<CtReport>& ct = std::nullopt);

std::string ct_text(const Program& program, const CtReport& report);

}  // namespace rfsmc
