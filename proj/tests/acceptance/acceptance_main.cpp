// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/oracles.hpp"
#include "vinerep/horizon.hpp"
#include "vinerep/planner.hpp"
#include "vinerep/policy.hpp"
#include "vinerep/report/commands.hpp"
#include "vinerep/report/config.hpp"
#include "vinerep/surveyfit.hpp"

namespace {

namespace fs = std::filesystem;
using namespace vinerep;

const std::string kCode = VINEREP_DATA_DIR "/sample_code.cfg";
const std::string kText = VINEREP_DATA_DIR "/sample_text.cfg";

// Accumulates sub-checks of one criterion; the first failure is reported.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failure_.empty(); }
  std::string detail() const { return ok() ? notes_ : failure_ + (notes_.empty() ? "" : " [" + notes_ + "]"); }

 private:
  std::string failure_;
  std::string notes_;
};

std::string num(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string ages_text(const std::vector<std::vector<int>>& ages) {
  std::string s = "(";
  for (std::size_t j = 0; j < ages.size(); ++j) {
    if (j) s += ",";
    if (ages[j].empty()) {
      s += "none";
      continue;
    }
    for (std::size_t k = 0; k < ages[j].size(); ++k) s += (k ? "/" : "") + std::to_string(ages[j][k]);
  }
  return s + ")";
}

bool within_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

// Each plot cut exactly once, within `slack` years of the expected age; -1 means never cut.
bool ages_match(const std::vector<std::vector<int>>& got, const std::vector<int>& want, int slack) {
  if (got.size() != want.size()) return false;
  for (std::size_t j = 0; j < want.size(); ++j) {
    if (want[j] < 0) {
      if (!got[j].empty()) return false;
    } else if (got[j].size() != 1 || std::abs(got[j][0] - want[j]) > slack) {
      return false;
    }
  }
  return true;
}

Check ac1() {
  Check c;
  const EconomicParams p;
  const double f44 = yearly_profit_per_ha(44, p);
  const double f1 = yearly_profit_per_ha(1, p);
  const DominanceMargin m = dominance_margin(p, 59, 2);
  c.expect(std::abs(f44 - 2885.66) <= 0.01, "f(44) = " + num(f44, 4));
  c.expect(std::abs(f1 + 2.34) <= 0.01, "f(1) = " + num(f1, 4));
  c.expect(std::abs(m.margin + 7112.0) <= 1.0, "margin = " + num(m.margin));
  c.expect(m.best_age == 44 && m.worst_age == 1,
           "argmax/argmin = " + std::to_string(m.best_age) + "/" + std::to_string(m.worst_age));
  c.note("f(44)=" + num(f44, 4) + " f(1)=" + num(f1, 4) + " margin=" + num(m.margin));
  return c;
}

Check ac2() {
  Check c;
  std::mt19937_64 rng(20240611);
  const int instances = 250;
  for (int i = 0; i < instances && c.ok(); ++i) {
    EconomicParams p;
    p.s = std::bernoulli_distribution(0.5)(rng) ? 0.0 : 10000.0;
    const int length = std::uniform_int_distribution<int>(1, 12)(rng);
    const int plots = std::uniform_int_distribution<int>(1, 3)(rng);
    Farm farm;
    farm.horizon = length;
    for (int j = 0; j < plots; ++j) {
      farm.plots.push_back({std::to_string(j), std::uniform_real_distribution<double>(0.1, 5.0)(rng),
                            std::uniform_int_distribution<int>(0, 70)(rng)});
    }
    const PlanningWindow window = PlanningWindow::from_farm(farm, 0, length);
    const PlanResult dp = solve_dp(farm, p, window);
    double enumerated = 0.0;
    CutSchedule en_schedule = CutSchedule::none(farm.plots.size());
    for (std::size_t j = 0; j < farm.plots.size(); ++j) {
      const PlanningWindow single{0, length, {farm.plots[j].initial_age}};
      const PlanResult en = solve_enumeration(farm.plots[j], p, single, length);
      enumerated += en.objective;
      en_schedule.cuts[j] = en.schedule.cuts[0];
    }
    const std::string tag = "instance " + std::to_string(i);
    c.expect(oracle::rel_diff(dp.objective, enumerated) <= 1e-9,
             tag + ": dp " + num(dp.objective, 6) + " vs enumeration " + num(enumerated, 6));
    c.expect(evaluate_schedule(farm, p, dp.schedule).total() == dp.objective, tag + ": dp schedule re-evaluation");
    c.expect(oracle::rel_diff(evaluate_schedule(farm, p, en_schedule).total(), enumerated) <= 1e-12,
             tag + ": enumeration schedule re-evaluation");
  }
  c.note(std::to_string(instances) + " instances");
  return c;
}

Check ac3(const report::FarmConfigFile& cfg) {
  Check c;
  const PlanResult plan = solve_dp(cfg.farm, cfg.params, PlanningWindow::from_farm(cfg.farm, 0, cfg.farm.horizon));
  const SimulationTrace trace = trace_of(cfg.farm, cfg.params, plan.schedule, cfg.farm.horizon);
  const double reference = 793114.13;
  c.expect(plan.objective >= reference - 0.01, "total " + num(plan.objective) + " below " + num(reference));
  c.expect(within_rel(plan.objective, reference, 0.015), "total " + num(plan.objective) + " not within 1.5%");
  c.expect(ages_match(trace.cut_ages, {61, 44, -1, -1, 58}, 1), "cut ages " + ages_text(trace.cut_ages));
  const SingleCutReport single = verify_single_cut(cfg.farm, cfg.params, plan.window);
  c.expect(single.passed(), "verify_single_cut failed");
  c.note("total=" + num(plan.objective) + " ages=" + ages_text(trace.cut_ages));
  return c;
}

Check ac4(const report::FarmConfigFile& cfg) {
  Check c;
  const int span = 60;
  const auto h5 = simulate_rolling(cfg.farm, cfg.params, 5, span);
  const auto h10 = simulate_rolling(cfg.farm, cfg.params, 10, span);
  const auto h15 = simulate_rolling(cfg.farm, cfg.params, 15, span);
  const auto full = solve_dp(cfg.farm, cfg.params, PlanningWindow::from_farm(cfg.farm, 0, span));
  const auto ihs = simulate_fixed_age_policy(cfg.farm, cfg.params, 59, span);

  c.expect(h5.cut_ages == std::vector<std::vector<int>>{{70}, {70}, {}, {}, {73}}, "H=5 ages " + ages_text(h5.cut_ages));
  c.expect(within_rel(h5.total, 691238.21, 0.015), "H=5 total " + num(h5.total) + " vs 691238.21");
  c.expect(within_rel(h10.total, 686398.61, 0.015), "H=10 total " + num(h10.total) + " vs 686398.61");
  c.expect(ages_match(h10.cut_ages, {71, 71, -1, -1, 69}, 1), "H=10 ages " + ages_text(h10.cut_ages));
  c.expect(within_rel(h15.total, 782085.19, 0.015), "H=15 total " + num(h15.total) + " vs 782085.19");
  c.expect(ages_match(h15.cut_ages, {59, 60, 66, -1, 64}, 1), "H=15 ages " + ages_text(h15.cut_ages));
  const bool ordering = full.objective >= h15.total && h15.total > ihs.total &&
                        ihs.total > std::max(h5.total, h10.total);
  c.expect(ordering, "ordering full >= H15 > IHS > max(H5, H10) violated");
  c.note("H5=" + num(h5.total) + " " + ages_text(h5.cut_ages) + " H10=" + num(h10.total) + " " +
         ages_text(h10.cut_ages) + " H15=" + num(h15.total) + " " + ages_text(h15.cut_ages) +
         (ordering ? " ordering ok" : " ordering violated"));
  return c;
}

Check ac5(const report::FarmConfigFile& cfg) {
  Check c;
  const auto ihs = simulate_fixed_age_policy(cfg.farm, cfg.params, 59, 60);
  c.expect(within_rel(ihs.total, 755712.99, 0.005), "total " + num(ihs.total) + " vs 755712.99");
  bool all59 = true;
  for (const auto& ages : ihs.cut_ages) all59 = all59 && ages == std::vector<int>{59};
  c.expect(all59, "cut ages " + ages_text(ihs.cut_ages));
  c.note("total=" + num(ihs.total) + " ages=" + ages_text(ihs.cut_ages));
  return c;
}

Check ac6(double area) {
  Check c;
  const CycleMetrics b = cycle_metrics(59, EconomicParams{}, area);
  EconomicParams free;
  free.replacement_subsidized = true;
  const CycleMetrics a = cycle_metrics(49, free, area);
  c.expect(std::abs(area - 8.52) < 1e-9, "total area " + num(area, 4));
  c.expect(std::abs(b.avg_rc - 1444) <= 1, "N=59 avg_rc " + num(b.avg_rc));
  c.expect(std::abs(b.avg_yield - 13027) <= 1, "N=59 avg_yield " + num(b.avg_yield));
  c.expect(std::abs(b.avg_production - 40985) <= 50, "N=59 avg_production " + num(b.avg_production));
  c.expect(std::abs(a.avg_support - 1738) <= 1, "N=49 avg_support " + num(a.avg_support));
  c.expect(std::abs(a.avg_yield - 13633) <= 1, "N=49 avg_yield " + num(a.avg_yield));
  c.expect(within_rel(a.avg_production, 42316, 0.015), "N=49 avg_production " + num(a.avg_production));
  c.note("B: rc=" + num(b.avg_rc) + " yield=" + num(b.avg_yield) + " kg=" + num(b.avg_production) +
         "; A: support=" + num(a.avg_support) + " yield=" + num(a.avg_yield) + " kg=" + num(a.avg_production));
  return c;
}

Check ac7(double area) {
  Check c;
  const EconomicParams p;
  const MatchResult fixed = match_price_benefit(13633, p, area, FixedAge{59});
  const double support = fixed.price_benefit * fixed.metrics.avg_production;
  c.expect(std::abs(fixed.price_benefit - 0.1257) <= 0.001, "a = " + num(fixed.price_benefit, 6));
  c.expect(std::abs(support - 5151) <= 10, "a * production = " + num(support));
  c.expect(std::abs(fixed.metrics.avg_support - support) <= 1e-6, "avg_support " + num(fixed.metrics.avg_support));
  const CycleMetrics m58 = cycle_metrics(58, p, area);
  c.expect(std::abs(m58.avg_rc - 1468) <= 1, "N=58 avg_rc " + num(m58.avg_rc));

  const MatchResult reopt = match_price_benefit(13633, p, area, Reoptimize{59});
  bool saw58 = false;
  std::string path;
  for (const MatchStep& step : reopt.trace) {
    saw58 = saw58 || step.n == 58;
    path += (path.empty() ? "" : ",") + std::to_string(step.n);
  }
  c.expect(saw58, "reoptimize trace " + path + " lacks N=58");

  EconomicParams free = p;
  free.replacement_subsidized = true;
  const double ratio = support / cycle_metrics(49, free, area).avg_support;
  c.expect(std::abs(ratio - 2.96) <= 0.05, "support ratio " + num(ratio, 4));
  const PolicyReport report = policy_comparison(p, area, {49, 59, 59, 13633.0});
  c.expect(report.support_ratio && std::abs(*report.support_ratio - ratio) < 1e-12, "policy_comparison ratio");
  c.note("a=" + num(fixed.price_benefit, 5) + " support=" + num(support) + " rc58=" + num(m58.avg_rc) +
         " reopt path=" + path + " ratio=" + num(ratio, 4));
  return c;
}

Check ac8() {
  Check c;
  std::vector<DataPoint> quad;
  for (int i = 0; i < 10; ++i) {
    const double x = 3.0 + 6.0 * i;
    quad.push_back({x, -661.4 + 451.1 * x - 6.774 * x * x});
  }
  const double truth[] = {-6.774, 451.1, -661.4};
  auto worst = [&](const FitQuadratic& f) {
    const double got[] = {f.c2, f.c1, f.c0};
    double w = 0.0;
    for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(got[i] - truth[i]) / std::abs(truth[i]));
    return w;
  };
  for (RobustMode mode : {RobustMode::none, RobustMode::lar}) {
    const double err = worst(fit_quadratic(quad, mode));
    c.expect(err <= 1e-9, "quadratic recovery error " + std::to_string(err));
  }

  std::vector<DataPoint> line;
  for (int i = 0; i < 11; ++i) line.push_back({5.0 + 5 * i, 0.0036 * (5.0 + 5 * i) + 0.02});
  const FitLinear exact = fit_linear_ols(line);
  c.expect(std::abs(exact.slope - 0.0036) <= 1e-9 * 0.0036 && std::abs(exact.intercept - 0.02) <= 1e-9 * 0.02,
           "linear recovery");

  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<DataPoint> noisy;
  double scale = 0.0;
  for (int i = 0; i < 30; ++i) {
    noisy.push_back({static_cast<double>(i), 3.0 + 0.5 * i + noise(rng)});
    scale = std::max(scale, std::abs(noisy.back().y) * i);
  }
  const FitLinear ols = fit_linear_ols(noisy);
  double s0 = 0.0, s1 = 0.0;
  for (const DataPoint& pt : noisy) {
    s0 += pt.y - ols(pt.x);
    s1 += (pt.y - ols(pt.x)) * pt.x;
  }
  c.expect(std::abs(s0) <= 1e-9 * scale && std::abs(s1) <= 1e-9 * scale, "OLS residual orthogonality");

  auto outlier = quad;
  outlier[4].y += 20000.0;
  const double lar_err = worst(fit_quadratic(outlier, RobustMode::lar));
  const double ls_err = worst(fit_quadratic(outlier, RobustMode::none));
  c.expect(lar_err < 1e-3, "LAR error with outlier " + std::to_string(lar_err));
  c.expect(ls_err > 1e-2, "LS error with outlier " + std::to_string(ls_err));

  const BootstrapResult b1 = bootstrap_ols(noisy, 500, 12345);
  const BootstrapResult b2 = bootstrap_ols(noisy, 500, 12345);
  c.expect(b1 == b2, "bootstrap not deterministic");
  c.expect(b1.slopes.size() == 500 && b1.intercepts.size() == 500 && b1.resamples == 500, "bootstrap count");
  c.note("LAR err=" + num(lar_err, 8) + " LS err=" + num(ls_err, 4) + " bootstrap=500");
  return c;
}

Check ac9() {
  Check c;
  std::mt19937_64 rng(9);
  const int trials = 1500;
  for (int i = 0; i < trials && c.ok(); ++i) {
    const int horizon = std::uniform_int_distribution<int>(1, 80)(rng);
    const int initial = std::uniform_int_distribution<int>(0, 70)(rng);
    const double density = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    std::vector<int> cuts;
    for (int t = 0; t < horizon; ++t)
      if (std::bernoulli_distribution(density)(rng)) cuts.push_back(t);
    c.expect(age_trajectory(initial, cuts, horizon) == oracle::ages_closed_form(initial, cuts, horizon),
             "trial " + std::to_string(i));
  }
  c.note(std::to_string(trials) + " trajectories");
  return c;
}

std::string without_timestamp(const fs::path& path) {
  auto j = nlohmann::json::parse(oracle::read_file(path));
  j.erase("timestamp");
  return j.dump();
}

Check ac10() {
  Check c;
  oracle::TempDir root;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"table1", kCode}, {"table2", kText}, {"table3", kText}};
  for (const auto& [command, farm] : commands) {
    for (const char* run : {"a", "b"}) {
      std::ostringstream out, err;
      const int code = cli::run_command(
          {"vinerep", "--out-dir", (root.path() / run).string(), command, "--farm", farm}, out, err);
      c.expect(code == 0, command + " exited " + std::to_string(code) + ": " + err.str());
    }
    const std::string csv = command + ".csv";
    const std::string manifest = command + ".manifest.json";
    c.expect(oracle::read_file(root.path() / "a" / csv) == oracle::read_file(root.path() / "b" / csv),
             csv + " differs between runs");
    c.expect(without_timestamp(root.path() / "a" / manifest) == without_timestamp(root.path() / "b" / manifest),
             manifest + " differs between runs");
  }
  c.note("table1/table2/table3 rerun bitwise-identical");
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* id, const std::function<Check()>& run) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << id << (c.ok() ? " PASS  " : " FAIL  ") << c.detail() << std::endl;
    failures += c.ok() ? 0 : 1;
  };

  const report::FarmConfigFile code = report::load_farm_config(kCode);
  const report::FarmConfigFile text = report::load_farm_config(kText);
  report("AC-1", ac1);
  report("AC-2", ac2);
  report("AC-3", [&] { return ac3(code); });
  report("AC-4", [&] { return ac4(code); });
  report("AC-5", [&] { return ac5(code); });
  report("AC-6", [&] { return ac6(text.farm.total_area()); });
  report("AC-7", [&] { return ac7(text.farm.total_area()); });
  report("AC-8", ac8);
  report("AC-9", ac9);
  report("AC-10", ac10);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
