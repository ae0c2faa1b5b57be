#pragma once

// Executed replacement policies over a fixed evaluation span: block
// rolling-horizon re-planning, a receding-horizon variant and the
// fixed-age (infinite-horizon) rule.

#include <optional>
#include <string>
#include <vector>

#include "vinerep/model.hpp"
#include "vinerep/planner.hpp"

namespace vinerep {

enum class RollingProtocol {
  block,      // solve [0,H), commit it, solve [H,2H), ...
  receding,   // re-solve every period over min(H, remaining), commit one period
};

struct SimulationTrace {
  CutSchedule schedule;                  // executed, periods in [0, span)
  std::vector<PlanResult> windows;       // one per re-solve; empty for fixed-age runs
  std::vector<std::vector<int>> cut_ages;
  double total = 0.0;
  int span = 0;
};

/// Fills cut_ages and total from an executed schedule.
SimulationTrace trace_of(const Farm& farm, const EconomicParams& params, CutSchedule schedule, int span);

SimulationTrace simulate_rolling(const Farm& farm, const EconomicParams& params, int window_length, int span,
                                 RollingProtocol protocol = RollingProtocol::block);

/// Cuts each plot in every period where its age equals `replacement_age`.
SimulationTrace simulate_fixed_age_policy(const Farm& farm, const EconomicParams& params, int replacement_age,
                                          int span);

struct TimeframeRow {
  std::string label;
  std::optional<int> window;  // H for rolling rows
  std::vector<std::vector<int>> cut_ages;
  double total = 0.0;
};

/// Rolling rows for each H, then the full-horizon optimum, then the fixed-age row.
std::vector<TimeframeRow> compare_timeframes(const Farm& farm, const EconomicParams& params,
                                             const std::vector<int>& windows, int ihs_age, int span);

}  // namespace vinerep
