#include "vinerep/horizon.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vinerep {
namespace {

Farm over_span(const Farm& farm, int span) {
  Farm out = farm;
  out.horizon = span;
  return out;
}

// Stand age at the first period after a window, given the window's local cuts.
int age_after(int initial_age, const std::vector<int>& cuts, int length) {
  if (!cuts.empty() && cuts.back() == length - 1) return 0;
  const std::vector<int> ages = age_trajectory(initial_age, cuts, length);
  return ages.back() + 1;
}

}  // namespace

SimulationTrace trace_of(const Farm& farm, const EconomicParams& params, CutSchedule schedule, int span) {
  const Farm full = over_span(farm, span);
  SimulationTrace trace;
  trace.span = span;
  trace.total = evaluate_schedule(full, params, schedule).total();
  trace.cut_ages.resize(full.plots.size());
  for (std::size_t j = 0; j < full.plots.size(); ++j) {
    const std::vector<int> ages = age_trajectory(full.plots[j].initial_age, schedule.cuts[j], span);
    for (int t : schedule.cuts[j]) trace.cut_ages[j].push_back(ages[static_cast<std::size_t>(t)]);
  }
  trace.schedule = std::move(schedule);
  return trace;
}

SimulationTrace simulate_rolling(const Farm& farm, const EconomicParams& params, int window_length, int span,
                                 RollingProtocol protocol) {
  if (span < 1) throw std::invalid_argument("simulation span must be at least 1");
  if (window_length < 1 || window_length > span) {
    throw std::invalid_argument("window length must lie in [1, " + std::to_string(span) + "]");
  }
  farm.validate();
  params.validate();

  CutSchedule executed = CutSchedule::none(farm.plots.size());
  std::vector<PlanResult> windows;
  PlanningWindow window = PlanningWindow::from_farm(farm, 0, 0);

  int t0 = 0;
  while (t0 < span) {
    window.start = t0;
    window.end = std::min(t0 + window_length, span);
    PlanResult plan = solve_dp(farm, params, window);

    // Block commits the whole window; receding commits only its first period.
    const int committed = protocol == RollingProtocol::block ? window.length() : 1;
    for (std::size_t j = 0; j < farm.plots.size(); ++j) {
      std::vector<int> kept;
      for (int t : plan.schedule.cuts[j]) {
        if (t < committed) kept.push_back(t);
      }
      for (int t : kept) executed.cuts[j].push_back(t0 + t);
      window.initial_ages[j] = age_after(window.initial_ages[j], kept, committed);
    }
    windows.push_back(std::move(plan));
    t0 += committed;
  }

  SimulationTrace trace = trace_of(farm, params, std::move(executed), span);
  trace.windows = std::move(windows);
  return trace;
}

SimulationTrace simulate_fixed_age_policy(const Farm& farm, const EconomicParams& params, int replacement_age,
                                          int span) {
  if (replacement_age < 1) throw std::invalid_argument("replacement age must be at least 1");
  if (span < 1) throw std::invalid_argument("simulation span must be at least 1");
  farm.validate();
  params.validate();

  CutSchedule schedule = CutSchedule::none(farm.plots.size());
  for (std::size_t j = 0; j < farm.plots.size(); ++j) {
    int age = farm.plots[j].initial_age;
    for (int t = 0; t < span; ++t) {
      if (age == replacement_age) {
        schedule.cuts[j].push_back(t);
        age = 0;
      } else {
        ++age;
      }
    }
  }
  return trace_of(farm, params, std::move(schedule), span);
}

std::vector<TimeframeRow> compare_timeframes(const Farm& farm, const EconomicParams& params,
                                             const std::vector<int>& windows, int ihs_age, int span) {
  std::vector<TimeframeRow> rows;
  for (int h : windows) {
    const SimulationTrace trace = simulate_rolling(farm, params, h, span);
    rows.push_back({std::to_string(h) + " Years", h, trace.cut_ages, trace.total});
  }

  const PlanResult full = solve_dp(farm, params, PlanningWindow::from_farm(farm, 0, span));
  const SimulationTrace optimum = trace_of(farm, params, full.schedule, span);
  rows.push_back({std::to_string(span) + " Years", std::nullopt, optimum.cut_ages, optimum.total});

  const SimulationTrace ihs = simulate_fixed_age_policy(farm, params, ihs_age, span);
  rows.push_back({"Infinite", std::nullopt, ihs.cut_ages, ihs.total});
  return rows;
}

}  // namespace vinerep
