#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "vinerep/surveyfit.hpp"

namespace {

using vinerep::DataPoint;
using vinerep::RobustMode;
using vinerep::SurveyRecord;

std::vector<DataPoint> quadratic_points(double c2, double c1, double c0, int n) {
  std::vector<DataPoint> pts;
  for (int i = 0; i < n; ++i) {
    const double x = 3.0 + 6.0 * i;
    pts.push_back({x, (c2 * x + c1) * x + c0});
  }
  return pts;
}

TEST(QualityProxy, SingleRecord) {
  const auto q = vinerep::quality_proxy({{"F1", 10, 2.0, 8000.0, 4000.0}});
  ASSERT_EQ(q.points.size(), 1u);
  EXPECT_EQ(q.points[0], (DataPoint{10.0, 1.0}));
  EXPECT_TRUE(q.warnings.empty());
}

TEST(QualityProxy, AreaWeightedAgeAndZeroProduction) {
  const std::vector<SurveyRecord> records{
      {"A", 10, 1.0, 1000.0, 100.0}, {"A", 30, 1.0, 3000.0, 300.0}, {"Z", 5, 1.0, 0.0, 0.0}};
  const auto q = vinerep::quality_proxy(records);
  ASSERT_EQ(q.points.size(), 1u);
  EXPECT_EQ(q.points[0].x, 20.0);
  EXPECT_NEAR(q.points[0].y, 400.0 / 2000.0, 1e-15);
  ASSERT_EQ(q.warnings.size(), 1u);
  EXPECT_NE(q.warnings[0].find('Z'), std::string::npos);

  const auto per_plot = vinerep::quality_proxy(records, vinerep::ProxyAggregation::per_plot);
  EXPECT_EQ(per_plot.points.size(), 2u);
}

TEST(InjectZeros, AppendsAtEnd) {
  const std::vector<DataPoint> pts{{5, 100}, {2, 7}};
  const auto out = vinerep::inject_zero_production(pts, {0, 1, 2, 3, 4});
  ASSERT_EQ(out.size(), 7u);
  EXPECT_EQ(out[0], pts[0]);
  EXPECT_EQ(out[1], pts[1]);
  EXPECT_EQ(out[4], (DataPoint{2, 0}));
  EXPECT_EQ(vinerep::inject_zero_production(pts, {}), pts);
  EXPECT_THROW(vinerep::inject_zero_production(pts, {-1}), std::invalid_argument);
}

TEST(FitQuadratic, ExactRecovery) {
  for (RobustMode mode : {RobustMode::none, RobustMode::lar}) {
    const auto fit = vinerep::fit_quadratic(quadratic_points(-6.774, 451.1, -661.4, 10), mode);
    EXPECT_LE(std::abs(fit.c2 + 6.774) / 6.774, 1e-9);
    EXPECT_LE(std::abs(fit.c1 - 451.1) / 451.1, 1e-9);
    EXPECT_LE(std::abs(fit.c0 + 661.4) / 661.4, 1e-9);
    EXPECT_NEAR(fit.r2, 1.0, 1e-12);
    EXPECT_EQ(fit.robust, mode == RobustMode::lar);
  }
}

TEST(FitQuadratic, OutlierRobustness) {
  auto pts = quadratic_points(-6.774, 451.1, -661.4, 10);
  pts[4].y += 20000.0;
  const auto ls = vinerep::fit_quadratic(pts, RobustMode::none);
  const auto lar = vinerep::fit_quadratic(pts, RobustMode::lar);
  const double truth[] = {-6.774, 451.1, -661.4};
  auto worst = [&](const vinerep::FitQuadratic& f) {
    const double got[] = {f.c2, f.c1, f.c0};
    double w = 0.0;
    for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(got[i] - truth[i]) / std::abs(truth[i]));
    return w;
  };
  EXPECT_LT(worst(lar), 1e-3);
  EXPECT_GT(worst(ls), 1e-2);
  EXPECT_GT(lar.iterations, 0);
}

TEST(FitQuadratic, ConstantData) {
  const std::vector<DataPoint> pts{{1, 5}, {2, 5}, {3, 5}, {4, 5}};
  const auto fit = vinerep::fit_quadratic(pts);
  EXPECT_NEAR(fit.c2, 0.0, 1e-12);
  EXPECT_NEAR(fit.c1, 0.0, 1e-12);
  EXPECT_NEAR(fit.c0, 5.0, 1e-12);
  EXPECT_NEAR(fit.sse, 0.0, 1e-20);
}

TEST(FitQuadratic, RankDeficient) {
  const std::vector<DataPoint> pts{{1, 5}, {1, 6}, {2, 5}, {2, 9}};
  EXPECT_THROW(vinerep::fit_quadratic(pts), std::invalid_argument);
}

TEST(FitQuadratic, ResidualOrthogonalityAndRmse) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 400.0);
  std::vector<DataPoint> pts;
  for (int i = 0; i < 40; ++i) {
    const double x = 1 + i * 1.5;
    pts.push_back({x, -661.4 + 451.1 * x - 6.774 * x * x + noise(rng)});
  }
  const auto fit = vinerep::fit_quadratic(pts);
  double s0 = 0, s1 = 0, s2 = 0, scale = 0, sse = 0;
  for (const auto& p : pts) {
    const double r = p.y - fit(p.x);
    s0 += r;
    s1 += r * p.x;
    s2 += r * p.x * p.x;
    sse += r * r;
    scale = std::max(scale, std::abs(p.y) * p.x * p.x);
  }
  EXPECT_LE(std::abs(s0), 1e-9 * scale);
  EXPECT_LE(std::abs(s1), 1e-9 * scale);
  EXPECT_LE(std::abs(s2), 1e-9 * scale);
  EXPECT_NEAR(fit.sse, sse, 1e-9 * sse);
  EXPECT_NEAR(fit.rmse * fit.rmse * (40 - 3), fit.sse, 1e-9 * fit.sse);
  EXPECT_LE(fit.r2, 1.0);
  EXPECT_TRUE(std::isnan(vinerep::fit_quadratic(quadratic_points(1, 2, 3, 3)).rmse));
}

TEST(FitLinear, ExactLine) {
  const std::vector<DataPoint> pts{{0, 1}, {1, 3}, {2, 5}, {5, 11}};
  const auto fit = vinerep::fit_linear_ols(pts);
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_NEAR(fit.sse, 0.0, 1e-20);
  EXPECT_EQ(fit.quality_coefficient(), fit.slope);
}

TEST(FitLinear, ConstantY) {
  const std::vector<DataPoint> pts{{0, 4}, {1, 4}, {3, 4}};
  const auto fit = vinerep::fit_linear_ols(pts);
  EXPECT_NEAR(fit.slope, 0.0, 1e-15);
  EXPECT_EQ(fit.r2, 0.0);
}

TEST(FitLinear, Guards) {
  EXPECT_THROW(vinerep::fit_linear_ols({{1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(vinerep::fit_linear_ols({{1, 1}, {1, 2}, {1, 3}}), std::invalid_argument);
}

TEST(FitLinear, InferenceAgainstTextbookFormulas) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<DataPoint> pts;
  for (int i = 0; i < 11; ++i) pts.push_back({5.0 + 5 * i, 0.0036 * (5.0 + 5 * i) + noise(rng)});
  const auto fit = vinerep::fit_linear_ols(pts);
  const double n = 11;
  double mx = 0, my = 0;
  for (const auto& p : pts) {
    mx += p.x / n;
    my += p.y / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0, s0 = 0, s1 = 0;
  for (const auto& p : pts) {
    const double r = p.y - fit(p.x);
    sse += r * r;
    s0 += r;
    s1 += r * p.x;
  }
  const double sigma2 = sse / (n - 2);
  EXPECT_NEAR(fit.slope, slope, 1e-12);
  EXPECT_NEAR(fit.intercept, intercept, 1e-12);
  EXPECT_NEAR(fit.slope_se, std::sqrt(sigma2 / sxx), 1e-12);
  EXPECT_NEAR(fit.intercept_se, std::sqrt(sigma2 * (1 / n + mx * mx / sxx)), 1e-12);
  EXPECT_NEAR(fit.slope_t, fit.slope / fit.slope_se, 1e-9);
  EXPECT_NEAR(fit.r2, 1 - sse / syy, 1e-12);
  EXPECT_NEAR(fit.adjusted_r2, 1 - (1 - fit.r2) * (n - 1) / (n - 2), 1e-12);
  EXPECT_LE(std::abs(s0), 1e-9);
  EXPECT_LE(std::abs(s1), 1e-9 * 55);
}

TEST(Bootstrap, DeterministicAndSized) {
  std::vector<DataPoint> pts;
  for (int i = 0; i < 11; ++i) pts.push_back({static_cast<double>(5 + 5 * i), 0.0036 * (5 + 5 * i) + 0.01 * (i % 3)});
  const auto a = vinerep::bootstrap_ols(pts, 500, 42);
  const auto b = vinerep::bootstrap_ols(pts, 500, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.slopes.size(), 500u);
  EXPECT_EQ(a.intercepts.size(), 500u);
  EXPECT_LE(a.slope_ci.lo, a.slope_ci.hi);
  EXPECT_LE(a.intercept_ci.lo, a.intercept_ci.hi);
  const auto c = vinerep::bootstrap_ols(pts, 500, 43);
  EXPECT_NE(a.slopes, c.slopes);
  EXPECT_NE(vinerep::bootstrap_substream_seed(1, 0), vinerep::bootstrap_substream_seed(1, 1));
}

TEST(Bootstrap, PrefixStable) {
  std::vector<DataPoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({static_cast<double>(i), std::sin(i)});
  const auto small = vinerep::bootstrap_ols(pts, 20, 5);
  const auto large = vinerep::bootstrap_ols(pts, 50, 5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(small.slopes[i], large.slopes[i]);
}

TEST(Bootstrap, NoiselessLine) {
  const std::vector<DataPoint> pts{{0, 1}, {1, 3}, {2, 5}, {3, 7}};
  const auto r = vinerep::bootstrap_ols(pts, 500, 1);
  for (int i = 0; i < 500; ++i) {
    EXPECT_NEAR(r.slopes[i], 2.0, 1e-12);
    EXPECT_NEAR(r.intercepts[i], 1.0, 1e-12);
  }
  EXPECT_NEAR(r.slope_ci.hi - r.slope_ci.lo, 0.0, 1e-12);
  EXPECT_GT(r.redraws, 0u);  // one draw in 64 repeats a single x
  EXPECT_THROW(vinerep::bootstrap_ols(pts, 0, 1), std::invalid_argument);
}

}  // namespace
