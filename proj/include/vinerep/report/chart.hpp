#pragma once

// Dependency-free SVG line/scatter charts. Output is a pure function of the
// chart data: no timestamps or random ids in the document.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vinerep/policy.hpp"
#include "vinerep/surveyfit.hpp"

namespace vinerep::report {

enum class ChartKind { production, quality_fan, cycle };

struct Polyline {
  std::vector<DataPoint> points;
  std::string color = "#1f4e9c";
  double width = 2.0;
  double opacity = 1.0;
};

struct ChartData {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Polyline> lines;
  std::vector<DataPoint> scatter;
  std::string scatter_color = "#b04fb0";
  std::optional<DataPoint> marker;
  std::string marker_label;

  bool empty() const noexcept { return lines.empty() && scatter.empty(); }
};

/// Fitted production curve over ages [0, max_age] plus observed points.
ChartData production_chart(double c2, double c1, double c0, const std::vector<DataPoint>& observed, int max_age = 60);

/// One grey line per bootstrap resample, the OLS line on top, observed points.
ChartData quality_fan_chart(const std::vector<DataPoint>& observed, const FitLinear& fit,
                            const BootstrapResult& bootstrap);

/// Average cycle profit against N, with the maximizer marked.
ChartData cycle_chart(const CycleOptimum& optimum);

/// Throws std::invalid_argument on empty data.
std::string render_svg(const ChartData& chart);

/// Renders first and writes only on success.
void write_chart(const ChartData& chart, const std::filesystem::path& out);

}  // namespace vinerep::report
