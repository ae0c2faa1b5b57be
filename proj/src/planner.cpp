#include "vinerep/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vinerep/errors.hpp"
#include "vinerep/kernels/kernels.hpp"

namespace vinerep {
namespace {

struct PlotPlan {
  std::vector<int> cuts;
  double value_per_ha = 0.0;
  std::uint64_t states = 0;
};

PlotPlan solve_plot_dp(int initial_age, int length, const EconomicParams& params) {
  const auto periods = static_cast<std::size_t>(length);
  // Ages reachable inside the window are 0 .. initial_age + length - 1.
  const auto ages = static_cast<std::size_t>(initial_age) + periods;
  const std::vector<double> reward = profit_table(params, 0, ages);

  std::vector<double> next_value(ages + 1, 0.0);
  std::vector<double> next_cuts(ages + 1, 0.0);
  std::vector<double> value(ages + 1, 0.0);
  std::vector<double> cuts(ages + 1, 0.0);
  std::vector<std::uint8_t> decisions(periods * ages, 0);

  const kernels::KernelTable& k = kernels::active_kernels();
  for (std::size_t t = periods; t-- > 0;) {
    kernels::BellmanStage stage{reward,
                                next_value,
                                next_cuts,
                                params.producer_cut_cost(),
                                std::span<double>(value).first(ages),
                                std::span<double>(cuts).first(ages),
                                std::span<std::uint8_t>(decisions).subspan(t * ages, ages)};
    k.bellman_stage(stage);
    std::swap(value, next_value);
    std::swap(cuts, next_cuts);
  }

  PlotPlan plan;
  plan.value_per_ha = next_value[static_cast<std::size_t>(initial_age)];
  plan.states = static_cast<std::uint64_t>(periods) * ages;
  auto age = static_cast<std::size_t>(initial_age);
  for (std::size_t t = 0; t < periods; ++t) {
    if (decisions[t * ages + age] != 0) {
      plan.cuts.push_back(static_cast<int>(t));
      age = 0;
    } else {
      ++age;
    }
  }
  return plan;
}

void fill_objective(const Farm& farm, const EconomicParams& params, PlanResult& result) {
  const YieldBreakdown breakdown = evaluate_schedule(window_farm(farm, result.window), params, result.schedule);
  result.objective = breakdown.total();
  result.plot_values.assign(farm.plots.size(), 0.0);
  for (std::size_t j = 0; j < farm.plots.size(); ++j) {
    double v = 0.0;
    for (std::size_t t = 0; t < breakdown.revenue[j].size(); ++t) {
      v += breakdown.revenue[j][t] - breakdown.producer_cost[j][t];
    }
    result.plot_values[j] = v;
  }
}

// Candidate ordering shared by the enumeration: higher value, then fewer
// cuts, then the schedule that keeps at the first period where they differ.
bool preferred(double value, const std::vector<int>& cuts, double best_value, const std::vector<int>& best_cuts) {
  if (value != best_value) return value > best_value;
  if (cuts.size() != best_cuts.size()) return cuts.size() < best_cuts.size();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] != best_cuts[i]) return cuts[i] > best_cuts[i];
  }
  return false;
}

struct Enumerator {
  const EconomicParams& params;
  int length;
  int max_cuts;
  double cut_cost;
  std::vector<int> current;
  std::vector<int> best;
  double best_value = -std::numeric_limits<double>::infinity();
  std::uint64_t leaves = 0;

  void run(int t, int age, double value) {
    if (t == length) {
      ++leaves;
      if (preferred(value, current, best_value, best)) {
        best_value = value;
        best = current;
      }
      return;
    }
    const double earned = value + yearly_profit_per_ha(age, params);
    run(t + 1, age + 1, earned);
    if (static_cast<int>(current.size()) < max_cuts) {
      current.push_back(t);
      run(t + 1, 0, earned - cut_cost);
      current.pop_back();
    }
  }
};

}  // namespace

void PlanningWindow::validate() const {
  if (start < 0) throw std::invalid_argument("window start must be nonnegative");
  if (end <= start) throw std::invalid_argument("window [" + std::to_string(start) + ", " + std::to_string(end) + ") is empty");
  for (int age : initial_ages) {
    if (age < 0) throw std::invalid_argument("window initial ages must be nonnegative");
  }
}

PlanningWindow PlanningWindow::from_farm(const Farm& farm, int start, int end) {
  PlanningWindow w{start, end, {}};
  for (const Plot& plot : farm.plots) w.initial_ages.push_back(plot.initial_age);
  return w;
}

Farm window_farm(const Farm& farm, const PlanningWindow& window) {
  window.validate();
  if (window.initial_ages.size() != farm.plots.size()) {
    throw std::invalid_argument("window carries " + std::to_string(window.initial_ages.size()) +
                                " initial ages for " + std::to_string(farm.plots.size()) + " plots");
  }
  Farm out = farm;
  out.horizon = window.length();
  for (std::size_t j = 0; j < out.plots.size(); ++j) out.plots[j].initial_age = window.initial_ages[j];
  return out;
}

PlanResult solve_dp(const Farm& farm, const EconomicParams& params, const PlanningWindow& window) {
  const Farm local = window_farm(farm, window);
  local.validate();
  params.validate();

  PlanResult result;
  result.window = window;
  result.schedule = CutSchedule::none(local.plots.size());
  std::vector<double> dp_values(local.plots.size());
  for (std::size_t j = 0; j < local.plots.size(); ++j) {
    PlotPlan plan = solve_plot_dp(local.plots[j].initial_age, local.horizon, params);
    result.schedule.cuts[j] = std::move(plan.cuts);
    dp_values[j] = plan.value_per_ha * local.plots[j].area;
    result.stats.states_expanded += plan.states;
  }
  fill_objective(farm, params, result);

  for (std::size_t j = 0; j < dp_values.size(); ++j) {
    const double scale = std::max(1.0, std::abs(result.plot_values[j]));
    if (std::abs(dp_values[j] - result.plot_values[j]) > 1e-9 * scale) {
      throw ComputationError("DP value disagrees with schedule evaluation on plot '" + local.plots[j].id + "'");
    }
  }
  return result;
}

std::uint64_t schedule_count(int length, int max_cuts) noexcept {
  if (length < 0 || max_cuts < 0) return 0;
  const int top = std::min(length, max_cuts);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(length, k)
  for (int k = 0; k <= top; ++k) {
    if (k > 0) {
      // binom * (length - k + 1) / k, exact because C(n, k-1) * (n-k+1) is divisible by k
      const auto mul = static_cast<std::uint64_t>(length - k + 1);
      if (binom > kMax / mul) return kMax;
      binom = binom * mul / static_cast<std::uint64_t>(k);
    }
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

PlanResult solve_enumeration(const Plot& plot, const EconomicParams& params, const PlanningWindow& window,
                             int max_cuts) {
  if (max_cuts < 0) throw std::invalid_argument("max_cuts must be nonnegative");
  window.validate();
  params.validate();
  if (window.initial_ages.size() > 1) {
    throw std::invalid_argument("single-plot enumeration takes at most one initial age");
  }

  Farm single{{plot}, window.length()};
  if (!window.initial_ages.empty()) single.plots[0].initial_age = window.initial_ages[0];
  single.validate();

  const std::uint64_t count = schedule_count(window.length(), max_cuts);
  if (count > kEnumerationGuard) {
    throw ComputationError("enumeration would visit " + std::to_string(count) + " schedules (guard " +
                           std::to_string(kEnumerationGuard) + ")");
  }

  Enumerator e{params, window.length(), max_cuts, params.producer_cut_cost(), {}, {}};
  e.run(0, single.plots[0].initial_age, 0.0);

  PlanResult result;
  result.window = PlanningWindow{window.start, window.end, {single.plots[0].initial_age}};
  result.schedule.cuts = {e.best};
  result.stats.schedules_enumerated = e.leaves;
  fill_objective(single, params, result);
  return result;
}

SingleCutReport verify_single_cut(const Farm& farm, const EconomicParams& params, const PlanningWindow& window,
                                  int max_cuts_checked) {
  const Farm local = window_farm(farm, window);
  local.validate();
  const std::uint64_t count = schedule_count(window.length(), max_cuts_checked);
  if (count > kEnumerationGuard) {
    throw ComputationError("single-cut verification would enumerate " + std::to_string(count) + " schedules per plot");
  }

  SingleCutReport report;
  report.enumeration_holds = true;
  for (std::size_t j = 0; j < local.plots.size(); ++j) {
    const PlanningWindow plot_window{window.start, window.end, {window.initial_ages[j]}};
    const PlanResult best = solve_enumeration(local.plots[j], params, plot_window, max_cuts_checked);
    PlotCutCheck check;
    check.plot_id = local.plots[j].id;
    check.optimal_cuts = best.schedule.cuts[0].size();
    check.optimal_value = best.objective;
    check.at_most_one_cut = check.optimal_cuts <= 1;
    report.enumeration_holds = report.enumeration_holds && check.at_most_one_cut;
    report.plots.push_back(check);
  }
  report.certificate = dominance_margin(params, std::max(1, window.length() - 1), 2);
  report.certificate_holds = report.certificate.certifies_single_cut();
  return report;
}

}  // namespace vinerep
