#pragma once

// Average-cycle analysis of a fixed replacement age and the comparison of two
// government instruments: paying for replacements, or a per-kg price premium.
//
// Conventions: a cycle of size N averages over divisor N. Gross revenue sums
// ages 0..N, production sums ages 1..N (the age-0 term is excluded), and one
// replacement cost s * A is charged per cycle.

#include <optional>
#include <variant>
#include <vector>

#include "vinerep/model.hpp"

namespace vinerep {

struct CycleMetrics {
  int n = 0;
  double avg_yield = 0.0;       // EUR/yr, producer's view
  double avg_rc = 0.0;          // EUR/yr, s * A / N
  double avg_production = 0.0;  // kg/yr
  double avg_support = 0.0;     // EUR/yr, government outlay
  double avg_gross = 0.0;       // EUR/yr at price pu + a, before replacement cost
  double price_benefit = 0.0;   // a in force
  bool subsidized = false;
};

/// Producer's average yearly profit over a cycle of N years.
double cycle_average_profit(int n, const EconomicParams& params, double total_area);

CycleMetrics cycle_metrics(int n, const EconomicParams& params, double total_area);

struct CycleOptimum {
  int n = 0;
  CycleMetrics metrics;
  std::vector<double> curve;  // cycle_average_profit for N = 1..n_max
};

/// Exact argmax of cycle_average_profit over [1, n_max], ties toward smaller N.
CycleOptimum optimal_cycle_age(const EconomicParams& params, double total_area, int n_max = 59);

struct FixedAge {
  int n;
};
struct Reoptimize {
  int n_max = 59;
};
using ProducerMode = std::variant<FixedAge, Reoptimize>;

struct MatchStep {
  double price_benefit;  // a in force when the producer chose n
  int n;
  CycleMetrics metrics;  // at (n, price_benefit)
};

struct MatchResult {
  double price_benefit = 0.0;
  int n = 0;
  CycleMetrics metrics;  // final (n, a)
  std::vector<MatchStep> trace;
  bool converged = false;
  bool cycled = false;  // the producer's N revisited an earlier value before settling
  int iterations = 0;
};

/// Price premium a that lifts the average yield of a producer who pays for
/// replacements to `target`. A producer already at or above the target gets
/// a = 0. Throws ComputationError if G(N) <= 0 or if the iteration does not
/// settle within 100 updates.
MatchResult match_price_benefit(double target_avg_yield, const EconomicParams& params, double total_area,
                                ProducerMode mode);

/// Cycle ages left unset fall back to the exact argmax over [1, n_max].
struct PolicyScenario {
  std::optional<int> n_subsidized;  // producer with free replacement, (A)
  std::optional<int> n_producer;    // producer paying replacement, (B)
  int n_max = 59;
  std::optional<double> target_avg_yield;  // defaults to the subsidized producer's avg_yield
};

struct PolicyReport {
  CycleMetrics subsidized;     // (A)
  CycleMetrics unsubsidized;   // (B), a = 0
  double target = 0.0;
  MatchResult matched_fixed;   // (B) at n_producer
  MatchResult matched_reopt;   // (B') producer re-derives N
  int argmax_subsidized = 0;
  int argmax_unsubsidized = 0;
  /// Price-instrument support over replacement-subsidy support; empty when
  /// the replacement subsidy costs nothing (s = 0).
  std::optional<double> support_ratio;
};

PolicyReport policy_comparison(const EconomicParams& params, double total_area, const PolicyScenario& scenario);

}  // namespace vinerep
