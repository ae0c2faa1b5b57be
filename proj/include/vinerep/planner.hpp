#pragma once

// Exact finite-horizon replacement planning.
//
// solve_dp runs a backward dynamic program over (period, stand age) per plot;
// solve_enumeration exhaustively scores every schedule with a bounded number
// of cuts and serves as its independent oracle.

#include <cstdint>
#include <vector>

#include "vinerep/model.hpp"

namespace vinerep {

/// Periods [start, end) of the global timeline, with stand ages at `start`.
/// Cut periods in a PlanResult are local to the window (0 = start).
struct PlanningWindow {
  int start = 0;
  int end = 1;
  std::vector<int> initial_ages;

  int length() const noexcept { return end - start; }
  void validate() const;

  /// Window [start, end) for a farm, starting from the farm's initial ages.
  static PlanningWindow from_farm(const Farm& farm, int start, int end);
};

struct SolverStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t schedules_enumerated = 0;
};

struct PlanResult {
  PlanningWindow window;
  CutSchedule schedule;            // local periods
  double objective = 0.0;          // evaluate_schedule on the window
  std::vector<double> plot_values; // per plot, EUR
  SolverStats stats;
};

/// Farm restricted to a window: same plots, ages taken from the window,
/// horizon equal to the window length.
Farm window_farm(const Farm& farm, const PlanningWindow& window);

PlanResult solve_dp(const Farm& farm, const EconomicParams& params, const PlanningWindow& window);

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

/// Number of schedules with at most `max_cuts` cuts over `length` periods,
/// saturating at UINT64_MAX.
std::uint64_t schedule_count(int length, int max_cuts) noexcept;

/// Throws ComputationError when schedule_count exceeds kEnumerationGuard.
PlanResult solve_enumeration(const Plot& plot, const EconomicParams& params, const PlanningWindow& window,
                             int max_cuts);

struct PlotCutCheck {
  std::string plot_id;
  std::size_t optimal_cuts = 0;  // cuts used by the enumerated optimum
  double optimal_value = 0.0;
  bool at_most_one_cut = true;
};

struct SingleCutReport {
  std::vector<PlotCutCheck> plots;
  DominanceMargin certificate;  // over ages [0, window length - 1], b = 2
  bool certificate_holds = false;
  bool enumeration_holds = false;

  /// The optimum never needs more than one cut on any plot.
  bool passed() const noexcept { return enumeration_holds; }
};

SingleCutReport verify_single_cut(const Farm& farm, const EconomicParams& params, const PlanningWindow& window,
                                  int max_cuts_checked = 3);

}  // namespace vinerep
