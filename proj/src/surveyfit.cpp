#include "vinerep/surveyfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "vinerep/errors.hpp"
#include "vinerep/kernels/kernels.hpp"

namespace vinerep {
namespace {

constexpr int kLarMaxIterations = 100;
constexpr double kLarTolerance = 1e-10;
constexpr double kLarResidualFloor = 1e-8;
constexpr int kMaxRedrawsPerResample = 10'000;

std::size_t distinct_x(const std::vector<DataPoint>& points) {
  std::set<double> xs;
  for (const DataPoint& p : points) xs.insert(p.x);
  return xs.size();
}

// Least squares min ||diag(sqrt_w) (X c - y)|| by Householder QR.
// Columns of X are the monomials x^0 .. x^(degree).
struct LeastSquares {
  std::vector<double> coef;         // c_0 .. c_degree
  std::vector<std::vector<double>> r_inverse;  // upper triangular
};

LeastSquares solve_polynomial(const std::vector<DataPoint>& points, int degree, const std::vector<double>* sqrt_w) {
  const kernels::KernelTable& k = kernels::active_kernels();
  const std::size_t n = points.size();
  const auto p = static_cast<std::size_t>(degree) + 1;

  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sqrt_w ? (*sqrt_w)[i] : 1.0;
    double power = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      cols[j][i] = w * power;
      power *= points[i].x;
    }
    rhs[i] = w * points[i].y;
  }

  double largest_diag = 0.0;
  for (std::size_t c = 0; c < p; ++c) {
    std::span<double> x = std::span<double>(cols[c]).subspan(c);
    const double norm = std::sqrt(k.dot(x, x));
    if (norm == 0.0) throw std::invalid_argument("least squares design matrix is rank deficient");
    const double alpha = x[0] > 0.0 ? -norm : norm;
    std::vector<double> v(x.begin(), x.end());
    v[0] -= alpha;
    const double vv = k.dot(v, v);
    if (vv > 0.0) {
      for (std::size_t j = c + 1; j < p; ++j) {
        std::span<double> col = std::span<double>(cols[j]).subspan(c);
        k.axpy(-2.0 * k.dot(v, col) / vv, v, col);
      }
      std::span<double> b = std::span<double>(rhs).subspan(c);
      k.axpy(-2.0 * k.dot(v, b) / vv, v, b);
    }
    cols[c][c] = alpha;
    largest_diag = std::max(largest_diag, std::abs(alpha));
  }
  for (std::size_t c = 0; c < p; ++c) {
    if (std::abs(cols[c][c]) <= 1e-12 * largest_diag) {
      throw std::invalid_argument("least squares design matrix is rank deficient");
    }
  }

  LeastSquares out;
  out.coef.assign(p, 0.0);
  for (std::size_t i = p; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < p; ++j) acc -= cols[j][i] * out.coef[j];
    out.coef[i] = acc / cols[i][i];
  }

  out.r_inverse.assign(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) {
    out.r_inverse[j][j] = 1.0 / cols[j][j];
    for (std::size_t i = j; i-- > 0;) {
      double acc = 0.0;
      for (std::size_t m = i + 1; m <= j; ++m) acc += cols[m][i] * out.r_inverse[m][j];
      out.r_inverse[i][j] = -acc / cols[i][i];
    }
  }
  return out;
}

struct Residuals {
  double sse = 0.0;
  double sst = 0.0;
};

template <typename Model>
Residuals residual_stats(const std::vector<DataPoint>& points, const Model& model) {
  double mean = 0.0;
  for (const DataPoint& p : points) mean += p.y;
  mean /= static_cast<double>(points.size());
  Residuals out;
  for (const DataPoint& p : points) {
    const double r = p.y - model(p.x);
    out.sse += r * r;
    out.sst += (p.y - mean) * (p.y - mean);
  }
  return out;
}

double r_squared(const Residuals& r) { return r.sst > 0.0 ? 1.0 - r.sse / r.sst : 0.0; }

double adjusted(double r2, std::size_t n, std::size_t params) {
  if (n <= params) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - params);
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

std::size_t draw_index(std::mt19937_64& engine, std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r = 0;
  do {
    r = engine();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

}  // namespace

QualityProxy quality_proxy(const std::vector<SurveyRecord>& records, ProxyAggregation aggregation) {
  struct Group {
    std::string label;
    double area = 0.0;
    double production = 0.0;
    double revenue = 0.0;
    double age_area = 0.0;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SurveyRecord& r = records[i];
    std::string key = aggregation == ProxyAggregation::per_farm ? r.farm_id : r.farm_id + "#" + std::to_string(i);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back({aggregation == ProxyAggregation::per_farm ? r.farm_id : key});
    Group& g = groups[it->second];
    g.area += r.area;
    g.production += r.production;
    g.revenue += r.revenue;
    g.age_area += static_cast<double>(r.plot_age) * r.area;
  }

  QualityProxy out;
  for (const Group& g : groups) {
    if (!(g.area > 0.0)) {
      out.warnings.push_back(g.label + ": zero total area, excluded");
      continue;
    }
    const double productivity = g.production / g.area;
    if (!(productivity > 0.0)) {
      out.warnings.push_back(g.label + ": zero production, excluded");
      continue;
    }
    const double age = std::round(g.age_area / g.area);
    out.points.push_back({age, g.revenue / productivity});
  }
  return out;
}

std::vector<DataPoint> productivity_points(const std::vector<SurveyRecord>& records) {
  std::vector<DataPoint> out;
  out.reserve(records.size());
  for (const SurveyRecord& r : records) {
    if (r.area > 0.0) out.push_back({static_cast<double>(r.plot_age), r.production / r.area});
  }
  return out;
}

std::vector<DataPoint> inject_zero_production(std::vector<DataPoint> points, const std::vector<int>& young_ages) {
  for (int age : young_ages) {
    if (age < 0) throw std::invalid_argument("young ages must be nonnegative");
    points.push_back({static_cast<double>(age), 0.0});
  }
  return points;
}

FitQuadratic fit_quadratic(const std::vector<DataPoint>& points, RobustMode robust) {
  if (points.size() < 3 || distinct_x(points) < 3) {
    throw std::invalid_argument("quadratic fit needs at least 3 distinct ages");
  }

  LeastSquares ls = solve_polynomial(points, 2, nullptr);
  FitQuadratic fit;
  fit.robust = robust == RobustMode::lar;
  fit.n = points.size();

  if (robust == RobustMode::lar) {
    std::vector<double> sqrt_w(points.size());
    for (int it = 1; it <= kLarMaxIterations; ++it) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i].x;
        const double r = points[i].y - ((ls.coef[2] * x + ls.coef[1]) * x + ls.coef[0]);
        sqrt_w[i] = std::sqrt(1.0 / std::max(std::abs(r), kLarResidualFloor));
      }
      LeastSquares next = solve_polynomial(points, 2, &sqrt_w);
      double change = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        change = std::max(change, std::abs(next.coef[j] - ls.coef[j]) / std::max(1.0, std::abs(ls.coef[j])));
      }
      ls = std::move(next);
      fit.iterations = it;
      if (change < kLarTolerance) break;
    }
  }

  fit.c0 = ls.coef[0];
  fit.c1 = ls.coef[1];
  fit.c2 = ls.coef[2];
  const Residuals res = residual_stats(points, fit);
  fit.sse = res.sse;
  fit.r2 = r_squared(res);
  fit.adjusted_r2 = adjusted(fit.r2, fit.n, 3);
  fit.rmse = fit.n > 3 ? std::sqrt(res.sse / static_cast<double>(fit.n - 3)) : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

FitLinear fit_linear_ols(const std::vector<DataPoint>& points) {
  if (points.size() < 3) throw std::invalid_argument("linear fit needs at least 3 points");
  if (distinct_x(points) < 2) throw std::invalid_argument("linear fit needs at least 2 distinct x values");

  const LeastSquares ls = solve_polynomial(points, 1, nullptr);
  FitLinear fit;
  fit.n = points.size();
  fit.intercept = ls.coef[0];
  fit.slope = ls.coef[1];

  const Residuals res = residual_stats(points, fit);
  fit.sse = res.sse;
  fit.r2 = r_squared(res);
  fit.adjusted_r2 = adjusted(fit.r2, fit.n, 2);

  // cov = sigma^2 (R^T R)^-1 = sigma^2 R^-1 R^-T
  const double sigma2 = res.sse / static_cast<double>(fit.n - 2);
  auto variance = [&](std::size_t i) {
    double acc = 0.0;
    for (double v : ls.r_inverse[i]) acc += v * v;
    return sigma2 * acc;
  };
  fit.intercept_se = std::sqrt(variance(0));
  fit.slope_se = std::sqrt(variance(1));
  fit.intercept_t = fit.intercept / fit.intercept_se;
  fit.slope_t = fit.slope / fit.slope_se;
  return fit;
}

std::uint64_t bootstrap_substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  // splitmix64 output for state master + (index + 1) * golden gamma
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BootstrapResult bootstrap_ols(const std::vector<DataPoint>& points, int resamples, std::uint64_t seed) {
  if (resamples < 1) throw std::invalid_argument("resample count must be at least 1");
  (void)fit_linear_ols(points);

  BootstrapResult out;
  out.seed = seed;
  out.resamples = resamples;
  out.slopes.resize(static_cast<std::size_t>(resamples));
  out.intercepts.resize(static_cast<std::size_t>(resamples));

  const std::size_t n = points.size();
  std::vector<DataPoint> sample(n);
  for (int i = 0; i < resamples; ++i) {
    std::mt19937_64 engine(bootstrap_substream_seed(seed, static_cast<std::uint64_t>(i)));
    int attempts = 0;
    while (true) {
      for (std::size_t k = 0; k < n; ++k) sample[k] = points[draw_index(engine, n)];
      if (distinct_x(sample) >= 2) break;
      ++out.redraws;
      if (++attempts > kMaxRedrawsPerResample) {
        throw ComputationError("bootstrap resample " + std::to_string(i) + " stayed degenerate");
      }
    }
    const FitLinear fit = fit_linear_ols(sample);
    out.slopes[static_cast<std::size_t>(i)] = fit.slope;
    out.intercepts[static_cast<std::size_t>(i)] = fit.intercept;
  }

  out.slope_ci = {percentile(out.slopes, 0.025), percentile(out.slopes, 0.975)};
  out.intercept_ci = {percentile(out.intercepts, 0.025), percentile(out.intercepts, 0.975)};
  return out;
}

}  // namespace vinerep
