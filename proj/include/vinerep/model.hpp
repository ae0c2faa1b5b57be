#pragma once

// Economic model of a vineyard: age-dependent grape quality and quantity,
// per-hectare yearly profit, stand-age dynamics under a cut schedule and
// evaluation of the farm objective.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vinerep {

struct EconomicParams {
  double qc = 0.0036;      // quality gained per year of age
  double p0 = -661.4;      // quantity polynomial, kg/ha
  double p1 = 451.1;       // kg/ha per year
  double p2 = -6.774;      // kg/ha per year^2
  double pu = 3.0;         // base grape price, EUR/kg
  double s = 10000.0;      // replacement cost, EUR/ha
  double price_benefit = 0.0;  // government premium a, EUR/kg
  bool replacement_subsidized = false;

  /// Throws std::invalid_argument unless pu > 0, qc > 0, s >= 0, a >= 0.
  void validate() const;

  double price() const noexcept { return pu + price_benefit; }

  /// Replacement cost per hectare that the producer actually pays.
  double producer_cut_cost() const noexcept { return replacement_subsidized ? 0.0 : s; }

  bool operator==(const EconomicParams&) const = default;
};

struct Plot {
  std::string id;
  double area = 0.0;  // ha
  int initial_age = 0;

  bool operator==(const Plot&) const = default;
};

struct Farm {
  std::vector<Plot> plots;
  int horizon = 1;  // number of one-year periods

  void validate() const;
  double total_area() const noexcept;

  bool operator==(const Farm&) const = default;
};

/// Cut periods per plot, strictly increasing, each in [0, horizon).
struct CutSchedule {
  std::vector<std::vector<int>> cuts;

  static CutSchedule none(std::size_t plot_count) { return CutSchedule{std::vector<std::vector<int>>(plot_count)}; }

  std::size_t cut_count() const noexcept;
  bool operator==(const CutSchedule&) const = default;
};

/// Revenue, producer-charged replacement cost and government support per
/// (plot, period), in EUR.
struct YieldBreakdown {
  std::vector<std::vector<double>> revenue;
  std::vector<std::vector<double>> producer_cost;
  std::vector<std::vector<double>> support;
  double total_revenue = 0.0;
  double total_producer_cost = 0.0;
  double total_support = 0.0;

  double total() const noexcept { return total_revenue - total_producer_cost; }
};

struct DominanceMargin {
  double margin = 0.0;  // (max f - min f) - (b - 1) * s
  int best_age = 0;     // argmax of f on [0, age_max]
  int worst_age = 0;    // argmin of f on [0, age_max]

  /// A negative margin certifies that a second cut can never pay inside the window.
  bool certifies_single_cut() const noexcept { return margin < 0.0; }
};

/// Quality multiplier qc * age.
double quality(int age, const EconomicParams& params);

/// Expected production in kg/ha; raw polynomial, negative for very young and very old vines.
double quantity(int age, const EconomicParams& params);

/// Revenue per hectare in one year at the given age, (pu + a) * quality * quantity.
double yearly_profit_per_ha(int age, const EconomicParams& params);

/// f(first_age), ..., f(first_age + count - 1) through the active kernel backend.
std::vector<double> profit_table(const EconomicParams& params, int first_age, std::size_t count);

/// Stand ages for periods 0..horizon-1. A cut at t leaves the period-t age
/// untouched and resets the age to 0 at t+1.
std::vector<int> age_trajectory(int initial_age, std::span<const int> cuts, int horizon);

/// Throws std::invalid_argument when the schedule does not fit the farm.
void validate_schedule(const Farm& farm, const CutSchedule& schedule);

YieldBreakdown evaluate_schedule(const Farm& farm, const EconomicParams& params, const CutSchedule& schedule);

/// Per-hectare value of one plot's schedule, summed in period order.
double evaluate_plot_per_ha(int initial_age, std::span<const int> cuts, int horizon, const EconomicParams& params);

DominanceMargin dominance_margin(const EconomicParams& params, int age_max, int extra_cuts);

}  // namespace vinerep
