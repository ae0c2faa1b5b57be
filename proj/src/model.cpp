#include "vinerep/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "kernels/kernel_impl.hpp"
#include "vinerep/kernels/kernels.hpp"

namespace vinerep {
namespace {

kernels::ProfitCoeffs coeffs_of(const EconomicParams& p) {
  return kernels::ProfitCoeffs{p.price() * p.qc, p.p0, p.p1, p.p2};
}

void require_age(int age) {
  if (age < 0) throw std::invalid_argument("age must be nonnegative, got " + std::to_string(age));
}

}  // namespace

void EconomicParams::validate() const {
  if (!(pu > 0.0)) throw std::invalid_argument("pu must be positive");
  if (!(qc > 0.0)) throw std::invalid_argument("qc must be positive");
  if (!(s >= 0.0)) throw std::invalid_argument("s must be nonnegative");
  if (!(price_benefit >= 0.0)) throw std::invalid_argument("price benefit must be nonnegative");
}

void Farm::validate() const {
  if (plots.empty()) throw std::invalid_argument("farm needs at least one plot");
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  for (const Plot& plot : plots) {
    if (!(plot.area > 0.0)) throw std::invalid_argument("plot '" + plot.id + "' has nonpositive area");
    if (plot.initial_age < 0) throw std::invalid_argument("plot '" + plot.id + "' has negative initial age");
  }
}

double Farm::total_area() const noexcept {
  double total = 0.0;
  for (const Plot& plot : plots) total += plot.area;
  return total;
}

std::size_t CutSchedule::cut_count() const noexcept {
  std::size_t n = 0;
  for (const auto& plot_cuts : cuts) n += plot_cuts.size();
  return n;
}

double quality(int age, const EconomicParams& params) {
  require_age(age);
  return params.qc * static_cast<double>(age);
}

double quantity(int age, const EconomicParams& params) {
  require_age(age);
  const double x = static_cast<double>(age);
  return (params.p2 * x + params.p1) * x + params.p0;
}

double yearly_profit_per_ha(int age, const EconomicParams& params) {
  require_age(age);
  return kernels::profit_at(coeffs_of(params), static_cast<double>(age));
}

std::vector<double> profit_table(const EconomicParams& params, int first_age, std::size_t count) {
  require_age(first_age);
  std::vector<double> out(count);
  kernels::active_kernels().profit_table(coeffs_of(params), first_age, out);
  return out;
}

std::vector<int> age_trajectory(int initial_age, std::span<const int> cuts, int horizon) {
  require_age(initial_age);
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  int previous = -1;
  for (int t : cuts) {
    if (t < 0 || t >= horizon) {
      throw std::invalid_argument("cut period " + std::to_string(t) + " outside [0, " + std::to_string(horizon) + ")");
    }
    if (t <= previous) throw std::invalid_argument("cut periods must be strictly increasing");
    previous = t;
  }

  std::vector<int> ages(static_cast<std::size_t>(horizon));
  int age = initial_age;
  auto next_cut = cuts.begin();
  for (int t = 0; t < horizon; ++t) {
    ages[static_cast<std::size_t>(t)] = age;
    if (next_cut != cuts.end() && *next_cut == t) {
      age = 0;
      ++next_cut;
    } else {
      ++age;
    }
  }
  return ages;
}

void validate_schedule(const Farm& farm, const CutSchedule& schedule) {
  if (schedule.cuts.size() != farm.plots.size()) {
    throw std::invalid_argument("schedule covers " + std::to_string(schedule.cuts.size()) + " plots, farm has " +
                                std::to_string(farm.plots.size()));
  }
  for (std::size_t j = 0; j < farm.plots.size(); ++j) {
    (void)age_trajectory(farm.plots[j].initial_age, schedule.cuts[j], farm.horizon);
  }
}

YieldBreakdown evaluate_schedule(const Farm& farm, const EconomicParams& params, const CutSchedule& schedule) {
  farm.validate();
  params.validate();
  validate_schedule(farm, schedule);

  const auto periods = static_cast<std::size_t>(farm.horizon);
  const std::size_t plots = farm.plots.size();
  YieldBreakdown out;
  out.revenue.assign(plots, std::vector<double>(periods, 0.0));
  out.producer_cost.assign(plots, std::vector<double>(periods, 0.0));
  out.support.assign(plots, std::vector<double>(periods, 0.0));

  for (std::size_t j = 0; j < plots; ++j) {
    const Plot& plot = farm.plots[j];
    const std::vector<int> ages = age_trajectory(plot.initial_age, schedule.cuts[j], farm.horizon);
    for (std::size_t t = 0; t < periods; ++t) {
      out.revenue[j][t] = yearly_profit_per_ha(ages[t], params) * plot.area;
      out.total_revenue += out.revenue[j][t];
    }
    for (int t : schedule.cuts[j]) {
      const double cost = params.s * plot.area;
      const auto period = static_cast<std::size_t>(t);
      if (params.replacement_subsidized) {
        out.support[j][period] = cost;
        out.total_support += cost;
      } else {
        out.producer_cost[j][period] = cost;
        out.total_producer_cost += cost;
      }
    }
  }
  return out;
}

double evaluate_plot_per_ha(int initial_age, std::span<const int> cuts, int horizon, const EconomicParams& params) {
  const std::vector<int> ages = age_trajectory(initial_age, cuts, horizon);
  double value = 0.0;
  for (int age : ages) value += yearly_profit_per_ha(age, params);
  return value - params.producer_cut_cost() * static_cast<double>(cuts.size());
}

DominanceMargin dominance_margin(const EconomicParams& params, int age_max, int extra_cuts) {
  if (age_max < 1) throw std::invalid_argument("age_max must be at least 1");
  if (extra_cuts < 2) throw std::invalid_argument("extra cut count b must be at least 2");
  params.validate();

  const std::vector<double> f = profit_table(params, 0, static_cast<std::size_t>(age_max) + 1);
  const auto best = std::max_element(f.begin(), f.end());
  const auto worst = std::min_element(f.begin(), f.end());

  DominanceMargin out;
  out.best_age = static_cast<int>(best - f.begin());
  out.worst_age = static_cast<int>(worst - f.begin());
  out.margin = (*best - *worst) - static_cast<double>(extra_cuts - 1) * params.s;
  return out;
}

}  // namespace vinerep
