#include "vinerep/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vinerep/errors.hpp"
#include "vinerep/kernels/kernels.hpp"

namespace vinerep {
namespace {

constexpr int kMaxMatchIterations = 100;
constexpr double kBenefitTolerance = 1e-6;

void require_cycle(int n, double total_area) {
  if (n < 1) throw std::invalid_argument("cycle length N must be at least 1, got " + std::to_string(n));
  if (!(total_area > 0.0)) throw std::invalid_argument("total area must be positive");
}

double sum_quantity(int n, const EconomicParams& params) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) k[static_cast<std::size_t>(i - 1)] = quantity(i, params);
  return kernels::active_kernels().sum(k);
}

double sum_profit(int n, const EconomicParams& params) {
  const std::vector<double> f = profit_table(params, 0, static_cast<std::size_t>(n) + 1);
  return kernels::active_kernels().sum(f);
}

EconomicParams paying_producer(const EconomicParams& params, double price_benefit) {
  EconomicParams p = params;
  p.price_benefit = price_benefit;
  p.replacement_subsidized = false;
  return p;
}

}  // namespace

CycleMetrics cycle_metrics(int n, const EconomicParams& params, double total_area) {
  require_cycle(n, total_area);
  params.validate();
  const double divisor = static_cast<double>(n);

  CycleMetrics m;
  m.n = n;
  m.price_benefit = params.price_benefit;
  m.subsidized = params.replacement_subsidized;
  m.avg_gross = total_area * sum_profit(n, params) / divisor;
  m.avg_rc = params.s * total_area / divisor;
  m.avg_production = total_area * sum_quantity(n, params) / divisor;
  m.avg_yield = params.replacement_subsidized ? m.avg_gross : m.avg_gross - m.avg_rc;
  m.avg_support = params.replacement_subsidized ? m.avg_rc : 0.0;
  if (params.price_benefit > 0.0) m.avg_support += params.price_benefit * m.avg_production;
  return m;
}

double cycle_average_profit(int n, const EconomicParams& params, double total_area) {
  return cycle_metrics(n, params, total_area).avg_yield;
}

CycleOptimum optimal_cycle_age(const EconomicParams& params, double total_area, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  CycleOptimum best;
  best.curve.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    CycleMetrics m = cycle_metrics(n, params, total_area);
    best.curve.push_back(m.avg_yield);
    if (best.n == 0 || m.avg_yield > best.metrics.avg_yield) {
      best.n = n;
      best.metrics = m;
    }
  }
  return best;
}

MatchResult match_price_benefit(double target_avg_yield, const EconomicParams& params, double total_area,
                                ProducerMode mode) {
  params.validate();
  if (!(total_area > 0.0)) throw std::invalid_argument("total area must be positive");

  auto choose_n = [&](double a) {
    if (const auto* fixed = std::get_if<FixedAge>(&mode)) return fixed->n;
    const int n_max = std::get<Reoptimize>(mode).n_max;
    return optimal_cycle_age(paying_producer(params, a), total_area, n_max).n;
  };

  MatchResult result;
  std::vector<double> updates;  // a produced after each step
  double a = params.price_benefit;
  for (int iteration = 1; iteration <= kMaxMatchIterations; ++iteration) {
    const int n = choose_n(a);
    const CycleMetrics base = cycle_metrics(n, paying_producer(params, 0.0), total_area);
    const double g = base.avg_gross;
    if (!(g > 0.0)) {
      throw ComputationError("target unreachable: gross average revenue at N=" + std::to_string(n) +
                             " is not positive");
    }
    // avg_yield(N, a) = G(N) * (pu + a) / pu - avg_rc(N), linear in a.
    const double next = std::max(0.0, params.pu * (target_avg_yield + base.avg_rc - g) / g);

    result.trace.push_back({a, n, cycle_metrics(n, paying_producer(params, a), total_area)});
    result.iterations = iteration;

    // Settled when a (N, a) update repeats: a fixed point, or a periodic orbit.
    bool settled = false;
    for (std::size_t j = 0; j < updates.size() && !settled; ++j) {
      settled = result.trace[j].n == n && std::abs(updates[j] - next) < kBenefitTolerance;
    }
    updates.push_back(next);
    a = next;
    if (!settled) continue;

    result.converged = true;
    result.price_benefit = a;
    result.n = n;
    result.metrics = cycle_metrics(n, paying_producer(params, a), total_area);
    const auto& steps = result.trace;
    for (std::size_t i = 0; i < steps.size() && !result.cycled; ++i) {
      for (std::size_t k = i + 2; k < steps.size() && !result.cycled; ++k) {
        result.cycled = steps[i].n == steps[k].n && steps[i + 1].n != steps[i].n;
      }
    }
    return result;
  }
  throw ComputationError("price-benefit matching did not settle within " + std::to_string(kMaxMatchIterations) +
                         " iterations");
}

PolicyReport policy_comparison(const EconomicParams& params, double total_area, const PolicyScenario& scenario) {
  EconomicParams free_replacement = params;
  free_replacement.replacement_subsidized = true;
  free_replacement.price_benefit = 0.0;
  const EconomicParams paying = paying_producer(params, 0.0);

  PolicyReport report;
  report.argmax_subsidized = optimal_cycle_age(free_replacement, total_area, scenario.n_max).n;
  report.argmax_unsubsidized = optimal_cycle_age(paying, total_area, scenario.n_max).n;

  const int n_a = scenario.n_subsidized.value_or(report.argmax_subsidized);
  const int n_b = scenario.n_producer.value_or(report.argmax_unsubsidized);
  report.subsidized = cycle_metrics(n_a, free_replacement, total_area);
  report.unsubsidized = cycle_metrics(n_b, paying, total_area);
  report.target = scenario.target_avg_yield.value_or(report.subsidized.avg_yield);

  report.matched_fixed = match_price_benefit(report.target, paying, total_area, FixedAge{n_b});
  report.matched_reopt = match_price_benefit(report.target, paying, total_area, Reoptimize{scenario.n_max});

  if (report.subsidized.avg_support > 0.0) {
    report.support_ratio = report.matched_fixed.metrics.avg_support / report.subsidized.avg_support;
  }
  return report;
}

}  // namespace vinerep
