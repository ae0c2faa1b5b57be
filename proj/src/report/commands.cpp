#include "vinerep/report/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "text_util.hpp"
#include "vinerep/errors.hpp"
#include "vinerep/horizon.hpp"
#include "vinerep/kernels/kernels.hpp"
#include "vinerep/planner.hpp"
#include "vinerep/policy.hpp"
#include "vinerep/report/chart.hpp"
#include "vinerep/report/config.hpp"
#include "vinerep/report/manifest.hpp"
#include "vinerep/report/survey_csv.hpp"
#include "vinerep/report/table.hpp"
#include "vinerep/surveyfit.hpp"

namespace vinerep::cli {
namespace {

namespace fs = std::filesystem;
using report::Cell;
using report::CellKind;
using report::Column;
using report::Table;
using nlohmann::json;

// Collects outputs in memory; nothing touches the disk until commit(), so a
// failing run leaves no partial files behind.
class RunOutputs {
 public:
  RunOutputs(fs::path dir, std::string command) : dir_(std::move(dir)) { manifest_.command = std::move(command); }

  report::RunManifest& manifest() { return manifest_; }

  void add_input(const fs::path& path) { manifest_.inputs.push_back({path.string(), report::sha256_file(path)}); }

  void add_file(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

  void commit(const std::string& manifest_name) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw InputError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    for (const auto& [name, content] : files_) {
      write(dir_ / name, content);
      manifest_.outputs.push_back(name);
    }
    manifest_.outputs.push_back(manifest_name);
    manifest_.version = report::library_version();
    manifest_.timestamp = report::utc_timestamp();
    manifest_.kernel_backend = std::string(kernels::to_string(kernels::active_kernels().backend));
    write(dir_ / manifest_name, manifest_.to_json().dump(2) + "\n");
  }

 private:
  static void write(const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path.string() + "'");
    file << content;
  }

  fs::path dir_;
  report::RunManifest manifest_;
  std::vector<std::pair<std::string, std::string>> files_;
};

json params_json(const EconomicParams& p) {
  return {{"qc", p.qc},
          {"p0", p.p0},
          {"p1", p.p1},
          {"p2", p.p2},
          {"pu", p.pu},
          {"s", p.s},
          {"price_benefit", p.price_benefit},
          {"replacement_subsidized", p.replacement_subsidized}};
}

json farm_json(const Farm& farm) {
  json plots = json::array();
  for (const Plot& p : farm.plots) plots.push_back({{"id", p.id}, {"area", p.area}, {"initial_age", p.initial_age}});
  return {{"horizon", farm.horizon}, {"plots", plots}};
}

Cell cut_age_cell(const std::vector<int>& ages) {
  if (ages.empty()) return std::monostate{};
  if (ages.size() == 1) return static_cast<long long>(ages.front());
  std::string joined;
  for (std::size_t i = 0; i < ages.size(); ++i) joined += (i ? "/" : "") + std::to_string(ages[i]);
  return joined;
}

Cell periods_cell(const std::vector<int>& periods) {
  if (periods.empty()) return std::monostate{};
  std::string joined;
  for (std::size_t i = 0; i < periods.size(); ++i) joined += (i ? ";" : "") + std::to_string(periods[i]);
  return joined;
}

Cell optional_money(double v) { return v == 0.0 ? Cell{std::monostate{}} : Cell{v}; }

void emit_table(std::ostream& out, RunOutputs& outputs, const std::string& csv_name, const Table& table) {
  const report::RenderedTable rendered = report::render_table(table);
  out << rendered.text;
  outputs.add_file(csv_name, rendered.csv);
}

Table timeframe_table(const Farm& farm, const std::vector<TimeframeRow>& rows) {
  Table t;
  t.columns.push_back({"Horizon", CellKind::text});
  for (const Plot& p : farm.plots) t.columns.push_back({"Plot " + p.id, CellKind::integer});
  t.columns.push_back({"Total Yield", CellKind::money});
  for (const TimeframeRow& row : rows) {
    std::vector<Cell> cells{row.label};
    for (const auto& ages : row.cut_ages) cells.push_back(cut_age_cell(ages));
    cells.push_back(row.total);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table trace_table(const Farm& farm, const SimulationTrace& trace) {
  Table t{{{"Plot", CellKind::text},
           {"Area", CellKind::ratio},
           {"Initial Age", CellKind::integer},
           {"Cut Periods", CellKind::text},
           {"Cut Ages", CellKind::text}},
          {}};
  for (std::size_t j = 0; j < farm.plots.size(); ++j) {
    const Plot& p = farm.plots[j];
    t.rows.push_back({p.id, p.area, static_cast<long long>(p.initial_age), periods_cell(trace.schedule.cuts[j]),
                      cut_age_cell(trace.cut_ages[j])});
  }
  return t;
}

void append_metrics_row(Table& t, const std::string& label, const CycleMetrics& m) {
  t.rows.push_back({label, static_cast<long long>(m.n), m.avg_yield, optional_money(m.subsidized ? 0.0 : m.avg_rc),
                    m.avg_production, optional_money(m.avg_support), m.price_benefit});
}

Table metrics_table() {
  return Table{{{"IHS type", CellKind::text},
                {"N", CellKind::integer},
                {"Avg Yield", CellKind::money},
                {"Avg RC", CellKind::money},
                {"Avg Production", CellKind::kg},
                {"Avg Gov Support", CellKind::money},
                {"Price Benefit", CellKind::benefit}},
               {}};
}

struct Common {
  std::string farm_path;
  std::string out_dir = "vinerep-out";
  std::string backend = "auto";
};

report::FarmConfigFile load_farm(const Common& c, RunOutputs& outputs, std::ostream& err) {
  if (c.farm_path.empty()) throw InputError("--farm is required");
  report::FarmConfigFile cfg = report::load_farm_config(c.farm_path);
  for (const std::string& w : cfg.warnings) err << "warning: " << w << "\n";
  outputs.add_input(c.farm_path);
  outputs.manifest().parameters["farm"] = farm_json(cfg.farm);
  outputs.manifest().parameters["params"] = params_json(cfg.params);
  return cfg;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (report::detail::trim(item).empty()) continue;
    const auto v = report::detail::parse_number<int>(item);
    if (!v) throw InputError(flag + ": cannot parse '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vineyard replacement planning and policy analysis", "vinerep"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out-dir", common.out_dir, "Directory for CSV outputs and the run manifest");
  app.add_option("--kernels", common.backend, "Kernel backend: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::function<void()> action;
  auto farm_option = [&](CLI::App* sub) { sub->add_option("--farm", common.farm_path, "Farm config file"); };

  // fit
  std::string survey_path;
  std::string inject = "0,1,2,3,4";
  std::string robust = "lar";
  std::string aggregate = "farm";
  int resamples = 500;
  std::uint64_t seed = 0;
  auto* fit = app.add_subcommand("fit", "Fit quantity and quality functions from a survey CSV");
  fit->add_option("--survey", survey_path, "Survey CSV")->required();
  fit->add_option("--inject-zeros", inject, "Comma-separated young ages given zero production");
  fit->add_option("--robust", robust, "Quadratic fit mode")->check(CLI::IsMember({"none", "lar"}));
  fit->add_option("--aggregate", aggregate, "Quality proxy per farm or per plot")
      ->check(CLI::IsMember({"farm", "plot"}));
  fit->add_option("--resamples", resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
  fit->add_option("--seed", seed, "Bootstrap seed")->required();
  fit->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "fit");
      const report::SurveyIngest ingest = report::ingest_survey_csv(survey_path);
      outputs.add_input(survey_path);
      for (const auto& r : ingest.rejected) err << "warning: row " << r.row << " rejected: " << r.reason << "\n";
      const std::vector<int> young = parse_int_list(inject, "--inject-zeros");

      const auto quantity_points = inject_zero_production(productivity_points(ingest.records), young);
      const FitQuadratic q = fit_quadratic(quantity_points, robust == "lar" ? RobustMode::lar : RobustMode::none);
      const QualityProxy proxy =
          quality_proxy(ingest.records, aggregate == "farm" ? ProxyAggregation::per_farm : ProxyAggregation::per_plot);
      for (const auto& w : proxy.warnings) err << "warning: " << w << "\n";
      const FitLinear ols = fit_linear_ols(proxy.points);
      const BootstrapResult boot = bootstrap_ols(proxy.points, resamples, seed);

      outputs.manifest().parameters = {{"survey", survey_path}, {"inject_zeros", young},   {"robust", robust},
                                       {"aggregate", aggregate}, {"resamples", resamples}, {"seed", seed}};

      Table quantity_table{{{"Term", CellKind::text}, {"Value", CellKind::benefit}}, {}};
      quantity_table.rows = {{std::string("p2"), q.c2},       {std::string("p1"), q.c1},
                             {std::string("p0"), q.c0},       {std::string("sse"), q.sse},
                             {std::string("r2"), q.r2},       {std::string("adjusted_r2"), q.adjusted_r2},
                             {std::string("rmse"), q.rmse},   {std::string("n"), static_cast<long long>(q.n)}};
      out << "Quantity fit (" << robust << ")\n";
      emit_table(out, outputs, "fit_quantity.csv", quantity_table);

      Table quality_table{{{"Term", CellKind::text},
                           {"Coef", CellKind::benefit},
                           {"Std Err", CellKind::benefit},
                           {"t", CellKind::benefit},
                           {"CI 2.5%", CellKind::benefit},
                           {"CI 97.5%", CellKind::benefit}},
                          {}};
      quality_table.rows = {
          {std::string("Intercept"), ols.intercept, ols.intercept_se, ols.intercept_t, boot.intercept_ci.lo,
           boot.intercept_ci.hi},
          {std::string("Age"), ols.slope, ols.slope_se, ols.slope_t, boot.slope_ci.lo, boot.slope_ci.hi}};
      out << "\nQuality OLS (n=" << ols.n << ", r2=" << report::detail::fixed(ols.r2, 4)
          << "); exported qc = " << report::detail::fixed(ols.quality_coefficient(), 6) << "\n";
      emit_table(out, outputs, "fit_quality.csv", quality_table);

      Table boot_table{{{"Resample", CellKind::integer}, {"Slope", CellKind::text}, {"Intercept", CellKind::text}}, {}};
      for (int i = 0; i < boot.resamples; ++i) {
        boot_table.rows.push_back({static_cast<long long>(i), report::detail::shortest(boot.slopes[i]),
                                   report::detail::shortest(boot.intercepts[i])});
      }
      outputs.add_file("bootstrap.csv", report::render_table(boot_table).csv);
      out << "\nBootstrap: " << boot.resamples << " resamples, " << boot.redraws << " redraws\n";
      outputs.commit("fit.manifest.json");
    };
  });

  // solve
  std::optional<int> horizon;
  auto* solve = app.add_subcommand("solve", "Optimal replacement plan over the full horizon");
  farm_option(solve);
  solve->add_option("--horizon", horizon, "Override the config horizon")->check(CLI::PositiveNumber);
  solve->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "solve");
      report::FarmConfigFile cfg = load_farm(common, outputs, err);
      if (horizon) cfg.farm.horizon = *horizon;
      outputs.manifest().parameters["horizon"] = cfg.farm.horizon;
      const PlanResult plan = solve_dp(cfg.farm, cfg.params, PlanningWindow::from_farm(cfg.farm, 0, cfg.farm.horizon));
      const SimulationTrace trace = trace_of(cfg.farm, cfg.params, plan.schedule, cfg.farm.horizon);
      Table t = trace_table(cfg.farm, trace);
      t.columns.push_back({"Value", CellKind::money});
      for (std::size_t j = 0; j < t.rows.size(); ++j) t.rows[j].push_back(plan.plot_values[j]);
      emit_table(out, outputs, "solve.csv", t);
      out << "Total yield: " << report::detail::fixed(plan.objective, 2) << " EUR (" << plan.stats.states_expanded
          << " states)\n";
      outputs.commit("solve.manifest.json");
    };
  });

  // rolling
  int window = 5;
  int total = 60;
  bool receding = false;
  auto* rolling = app.add_subcommand("rolling", "Rolling-horizon re-planning");
  farm_option(rolling);
  rolling->add_option("--window", window, "Planning window H in years")->check(CLI::PositiveNumber);
  rolling->add_option("--total", total, "Evaluation span T in years")->check(CLI::PositiveNumber);
  rolling->add_flag("--receding", receding, "Re-plan every year instead of every window");
  rolling->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "rolling");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      outputs.manifest().parameters["window"] = window;
      outputs.manifest().parameters["total"] = total;
      outputs.manifest().parameters["protocol"] = receding ? "receding" : "block";
      const SimulationTrace trace = simulate_rolling(cfg.farm, cfg.params, window, total,
                                                     receding ? RollingProtocol::receding : RollingProtocol::block);
      emit_table(out, outputs, "rolling.csv", trace_table(cfg.farm, trace));
      out << "Total yield: " << report::detail::fixed(trace.total, 2) << " EUR over " << trace.windows.size()
          << " windows\n";
      outputs.commit("rolling.manifest.json");
    };
  });

  // ihs
  int ihs_age = 59;
  auto* ihs = app.add_subcommand("ihs", "Fixed replacement age policy");
  farm_option(ihs);
  ihs->add_option("--age", ihs_age, "Replacement age N")->check(CLI::PositiveNumber);
  ihs->add_option("--total", total, "Evaluation span T in years")->check(CLI::PositiveNumber);
  ihs->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "ihs");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      outputs.manifest().parameters["age"] = ihs_age;
      outputs.manifest().parameters["total"] = total;
      const SimulationTrace trace = simulate_fixed_age_policy(cfg.farm, cfg.params, ihs_age, total);
      emit_table(out, outputs, "ihs.csv", trace_table(cfg.farm, trace));
      out << "Total yield: " << report::detail::fixed(trace.total, 2) << " EUR\n";
      outputs.commit("ihs.manifest.json");
    };
  });

  // cycle
  int n_max = 59;
  bool subsidized = false;
  auto* cycle = app.add_subcommand("cycle", "Average cycle profit and its maximizing replacement age");
  farm_option(cycle);
  cycle->add_option("--nmax", n_max, "Largest replacement age searched")->check(CLI::PositiveNumber);
  cycle->add_flag("--subsidized", subsidized, "Government pays every replacement");
  cycle->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "cycle");
      report::FarmConfigFile cfg = load_farm(common, outputs, err);
      if (subsidized) cfg.params.replacement_subsidized = true;
      outputs.manifest().parameters["nmax"] = n_max;
      outputs.manifest().parameters["subsidized"] = cfg.params.replacement_subsidized;
      const CycleOptimum best = optimal_cycle_age(cfg.params, cfg.farm.total_area(), n_max);
      Table t = metrics_table();
      for (int n = 1; n <= n_max; ++n) {
        append_metrics_row(t, std::to_string(n), cycle_metrics(n, cfg.params, cfg.farm.total_area()));
      }
      outputs.add_file("cycle.csv", report::render_table(t).csv);
      Table summary = metrics_table();
      append_metrics_row(summary, "argmax", best.metrics);
      emit_table(out, outputs, "cycle_argmax.csv", summary);
      outputs.commit("cycle.manifest.json");
    };
  });

  // policy, table2, table3 share the scenario options
  std::string target = "auto";
  std::optional<int> n_subsidized;
  std::optional<int> n_producer;
  auto scenario_options = [&](CLI::App* sub) {
    farm_option(sub);
    sub->add_option("--n-subsidized", n_subsidized, "Cycle age of the producer with free replacement");
    sub->add_option("--n-producer", n_producer, "Cycle age of the producer paying replacement");
    sub->add_option("--nmax", n_max, "Largest replacement age searched")->check(CLI::PositiveNumber);
  };
  auto scenario = [&](RunOutputs& outputs) {
    PolicyScenario s{n_subsidized, n_producer, n_max, std::nullopt};
    if (target != "auto") {
      const auto v = report::detail::parse_number<double>(target);
      if (!v) throw InputError("--target-yield expects a number or 'auto', got '" + target + "'");
      s.target_avg_yield = *v;
    }
    json& p = outputs.manifest().parameters;
    p["n_subsidized"] = n_subsidized ? json(*n_subsidized) : json("argmax");
    p["n_producer"] = n_producer ? json(*n_producer) : json("argmax");
    p["nmax"] = n_max;
    p["target_yield"] = target;
    return s;
  };
  auto policy_tables = [&](const PolicyReport& r, bool with_matching) {
    Table t = metrics_table();
    append_metrics_row(t, "(A) IHS - NRC", r.subsidized);
    if (with_matching) {
      append_metrics_row(t, "(B') IHS - RC", r.matched_reopt.metrics);
      append_metrics_row(t, "(B) IHS - RC", r.matched_fixed.metrics);
    } else {
      append_metrics_row(t, "(B) IHS - RC", r.unsubsidized);
    }
    return t;
  };
  auto print_policy_notes = [&](const PolicyReport& r) {
    out << "Exact argmax: N=" << r.argmax_subsidized << " (free replacement), N=" << r.argmax_unsubsidized
        << " (producer pays)\n";
    out << "Target avg yield: " << report::detail::fixed(r.target, 2) << "; matched benefit a = "
        << report::detail::fixed(r.matched_fixed.price_benefit, 4) << " EUR/kg at N=" << r.matched_fixed.n << "\n";
    out << "Re-optimizing producer: N path";
    for (const MatchStep& step : r.matched_reopt.trace) out << ' ' << step.n;
    out << (r.matched_reopt.cycled ? " (revisited)" : "") << "\n";
    if (r.support_ratio) out << "Support ratio (price benefit / free replacement): " << report::detail::fixed(*r.support_ratio, 4) << "\n";
  };

  auto* policy = app.add_subcommand("policy", "Compare replacement subsidy with a matched price benefit");
  scenario_options(policy);
  policy->add_option("--target-yield", target, "Average yield to match, or 'auto'");
  policy->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "policy");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      const PolicyReport r = policy_comparison(cfg.params, cfg.farm.total_area(), scenario(outputs));
      emit_table(out, outputs, "policy.csv", policy_tables(r, true));
      print_policy_notes(r);
      outputs.commit("policy.manifest.json");
    };
  });

  // table1
  std::string windows_text = "5,10,15";
  auto* table1 = app.add_subcommand("table1", "Replacement ages and total yield per decision time-frame");
  farm_option(table1);
  table1->add_option("--windows", windows_text, "Comma-separated rolling windows");
  table1->add_option("--age", ihs_age, "Fixed replacement age")->check(CLI::PositiveNumber);
  table1->add_option("--total", total, "Evaluation span T in years")->check(CLI::PositiveNumber);
  table1->callback([&] {
    action = [&] {
      RunOutputs outputs(common.out_dir, "table1");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      const std::vector<int> windows = parse_int_list(windows_text, "--windows");
      outputs.manifest().parameters["windows"] = windows;
      outputs.manifest().parameters["age"] = ihs_age;
      outputs.manifest().parameters["total"] = total;
      const auto rows = compare_timeframes(cfg.farm, cfg.params, windows, ihs_age, total);
      emit_table(out, outputs, "table1.csv", timeframe_table(cfg.farm, rows));
      outputs.commit("table1.manifest.json");
    };
  });

  // table2 / table3 default to N = 49 (free replacement) and N = 59 (producer pays)
  auto* table2 = app.add_subcommand("table2", "Average values with and without free replacement");
  scenario_options(table2);
  table2->callback([&] {
    action = [&] {
      if (!n_subsidized) n_subsidized = 49;
      if (!n_producer) n_producer = 59;
      RunOutputs outputs(common.out_dir, "table2");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      const PolicyReport r = policy_comparison(cfg.params, cfg.farm.total_area(), scenario(outputs));
      emit_table(out, outputs, "table2.csv", policy_tables(r, false));
      out << "Exact argmax: N=" << r.argmax_subsidized << " (free replacement), N=" << r.argmax_unsubsidized
          << " (producer pays)\n";
      outputs.commit("table2.manifest.json");
    };
  });

  auto* table3 = app.add_subcommand("table3", "Average yields matched under both government instruments");
  scenario_options(table3);
  table3->add_option("--target-yield", target, "Average yield to match, or 'auto'");
  table3->callback([&] {
    action = [&] {
      if (!n_subsidized) n_subsidized = 49;
      if (!n_producer) n_producer = 59;
      RunOutputs outputs(common.out_dir, "table3");
      const report::FarmConfigFile cfg = load_farm(common, outputs, err);
      const PolicyReport r = policy_comparison(cfg.params, cfg.farm.total_area(), scenario(outputs));
      emit_table(out, outputs, "table3.csv", policy_tables(r, true));
      print_policy_notes(r);
      outputs.commit("table3.manifest.json");
    };
  });

  // chart
  std::string kind = "production";
  std::string chart_out;
  auto* chart = app.add_subcommand("chart", "Write an SVG chart");
  farm_option(chart);
  chart->add_option("--kind", kind, "production, quality-fan or cycle")
      ->check(CLI::IsMember({"production", "quality-fan", "cycle"}));
  chart->add_option("--out", chart_out, "SVG output path")->required();
  chart->add_option("--survey", survey_path, "Survey CSV (production, quality-fan)");
  chart->add_option("--inject-zeros", inject, "Young ages given zero production");
  chart->add_option("--robust", robust, "Quadratic fit mode")->check(CLI::IsMember({"none", "lar"}));
  chart->add_option("--resamples", resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
  chart->add_option("--seed", seed, "Bootstrap seed");
  chart->add_option("--nmax", n_max, "Largest replacement age (cycle)")->check(CLI::PositiveNumber);
  chart->add_flag("--subsidized", subsidized, "Government pays every replacement (cycle)");
  chart->callback([&] {
    action = [&] {
      const fs::path out_path(chart_out);
      const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
      RunOutputs outputs(dir, "chart");
      json& params = outputs.manifest().parameters;
      params["kind"] = kind;
      report::ChartData data;
      if (kind == "cycle") {
        report::FarmConfigFile cfg = load_farm(common, outputs, err);
        if (subsidized) cfg.params.replacement_subsidized = true;
        params["nmax"] = n_max;
        params["subsidized"] = cfg.params.replacement_subsidized;
        data = report::cycle_chart(optimal_cycle_age(cfg.params, cfg.farm.total_area(), n_max));
      } else if (kind == "production") {
        std::vector<DataPoint> observed;
        EconomicParams defaults;
        double c2 = defaults.p2, c1 = defaults.p1, c0 = defaults.p0;
        if (!survey_path.empty()) {
          const auto ingest = report::ingest_survey_csv(survey_path);
          outputs.add_input(survey_path);
          const std::vector<int> young = parse_int_list(inject, "--inject-zeros");
          observed = inject_zero_production(productivity_points(ingest.records), young);
          const FitQuadratic q = fit_quadratic(observed, robust == "lar" ? RobustMode::lar : RobustMode::none);
          c2 = q.c2;
          c1 = q.c1;
          c0 = q.c0;
          params["survey"] = survey_path;
          params["inject_zeros"] = young;
          params["robust"] = robust;
        }
        data = report::production_chart(c2, c1, c0, observed);
      } else {
        if (survey_path.empty()) throw InputError("--survey is required for the quality-fan chart");
        const auto ingest = report::ingest_survey_csv(survey_path);
        outputs.add_input(survey_path);
        const QualityProxy proxy = quality_proxy(ingest.records);
        const FitLinear ols = fit_linear_ols(proxy.points);
        data = report::quality_fan_chart(proxy.points, ols, bootstrap_ols(proxy.points, resamples, seed));
        params["survey"] = survey_path;
        params["resamples"] = resamples;
        params["seed"] = seed;
      }
      outputs.add_file(out_path.filename().string(), report::render_svg(data));
      out << "Wrote " << out_path.string() << "\n";
      outputs.commit(out_path.stem().string() + ".manifest.json");
    };
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (common.backend != "auto") {
    const auto backend = common.backend == "avx2" ? kernels::Backend::avx2 : kernels::Backend::scalar;
    if (!kernels::select_backend(backend)) {
      err << "error: kernel backend '" << common.backend << "' is not available on this CPU\n";
      return kUsageError;
    }
  }

  try {
    action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  }
  return kSuccess;
}

}  // namespace vinerep::cli
