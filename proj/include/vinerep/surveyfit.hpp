#pragma once

// Survey pipeline: quality proxy per farm, zero-production augmentation,
// quadratic least squares (plain or least-absolute-residual), simple OLS with
// inference statistics and seeded bootstrap resampling.

#include <cstdint>
#include <string>
#include <vector>

namespace vinerep {

struct SurveyRecord {
  std::string farm_id;
  int plot_age = 0;
  double area = 0.0;        // ha
  double production = 0.0;  // kg
  double revenue = 0.0;     // EUR
};

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const DataPoint&) const = default;
};

enum class ProxyAggregation { per_farm, per_plot };

struct QualityProxy {
  std::vector<DataPoint> points;  // (age, GQ)
  std::vector<std::string> warnings;
};

/// GQ = revenue / (production / area). Per farm, the age is the area-weighted
/// mean plot age rounded to the nearest integer. Farms (or plots) with zero
/// production are skipped with a warning.
QualityProxy quality_proxy(const std::vector<SurveyRecord>& records,
                           ProxyAggregation aggregation = ProxyAggregation::per_farm);

/// (age, production / area) per record, the data behind the quantity fit.
std::vector<DataPoint> productivity_points(const std::vector<SurveyRecord>& records);

/// Appends (age, 0) for each young age, after the existing points.
std::vector<DataPoint> inject_zero_production(std::vector<DataPoint> points, const std::vector<int>& young_ages);

enum class RobustMode { none, lar };

struct FitQuadratic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double sse = 0.0;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  double rmse = 0.0;  // sqrt(sse / (n - 3)); NaN when n == 3
  bool robust = false;
  int iterations = 0;  // IRLS iterations, 0 for plain least squares
  std::size_t n = 0;

  double operator()(double x) const noexcept { return (c2 * x + c1) * x + c0; }
};

/// Throws std::invalid_argument with fewer than 3 distinct x values.
FitQuadratic fit_quadratic(const std::vector<DataPoint>& points, RobustMode robust = RobustMode::none);

struct FitLinear {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double slope_t = 0.0;
  double intercept_t = 0.0;
  double sse = 0.0;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  std::size_t n = 0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
  /// Quality coefficient exported to the model: the slope alone, intercept dropped.
  double quality_coefficient() const noexcept { return slope; }
};

/// Throws std::invalid_argument with fewer than 3 points or all x equal.
FitLinear fit_linear_ols(const std::vector<DataPoint>& points);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const ConfidenceInterval&) const = default;
};

struct BootstrapResult {
  std::uint64_t seed = 0;
  int resamples = 0;
  std::vector<double> slopes;
  std::vector<double> intercepts;
  ConfidenceInterval slope_ci;      // 2.5 / 97.5 percentiles
  ConfidenceInterval intercept_ci;
  std::uint64_t redraws = 0;        // degenerate resamples drawn again

  bool operator==(const BootstrapResult&) const = default;
};

/// Resample i draws from its own generator seeded with
/// bootstrap_substream_seed(seed, i), so the result does not depend on the
/// order in which resamples are computed.
BootstrapResult bootstrap_ols(const std::vector<DataPoint>& points, int resamples, std::uint64_t seed);

std::uint64_t bootstrap_substream_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace vinerep
