#include "vinerep/report/chart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"
#include "vinerep/errors.hpp"

namespace vinerep::report {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double fraction = raw / magnitude;
  double nice = 10.0;
  if (fraction <= 1.0) nice = 1.0;
  else if (fraction <= 2.0) nice = 2.0;
  else if (fraction <= 5.0) nice = 5.0;
  return nice * magnitude;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

Axis make_axis(Range r) {
  if (r.hi - r.lo <= 0.0) {
    const double pad = std::max(1.0, std::abs(r.lo) * 0.1);
    r.lo -= pad;
    r.hi += pad;
  }
  const double step = nice_step(r.hi - r.lo, 6);
  return {std::floor(r.lo / step) * step, std::ceil(r.hi / step) * step, step};
}

int tick_decimals(double step) { return step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step))); }

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return detail::fixed(v, 2); }

}  // namespace

ChartData production_chart(double c2, double c1, double c0, const std::vector<DataPoint>& observed, int max_age) {
  ChartData chart;
  chart.title = "Expected production per hectare";
  chart.x_label = "Age (years)";
  chart.y_label = "Production (kg/ha)";
  Polyline curve;
  for (int age = 0; age <= max_age; ++age) {
    const double x = age;
    curve.points.push_back({x, (c2 * x + c1) * x + c0});
  }
  chart.lines.push_back(std::move(curve));
  chart.scatter = observed;
  return chart;
}

ChartData quality_fan_chart(const std::vector<DataPoint>& observed, const FitLinear& fit,
                            const BootstrapResult& bootstrap) {
  ChartData chart;
  chart.title = "Grape quality proxy against vine age";
  chart.x_label = "Age (years)";
  chart.y_label = "Quality proxy";
  if (observed.empty()) return chart;
  const auto [lo, hi] = std::minmax_element(observed.begin(), observed.end(),
                                            [](const DataPoint& a, const DataPoint& b) { return a.x < b.x; });
  const double x0 = lo->x;
  const double x1 = hi->x;
  for (std::size_t i = 0; i < bootstrap.slopes.size(); ++i) {
    const double m = bootstrap.slopes[i];
    const double b = bootstrap.intercepts[i];
    chart.lines.push_back({{{x0, m * x0 + b}, {x1, m * x1 + b}}, "#808080", 1.0, 0.2});
  }
  chart.lines.push_back({{{x0, fit(x0)}, {x1, fit(x1)}}, "#d62728", 2.5, 1.0});
  chart.scatter = observed;
  return chart;
}

ChartData cycle_chart(const CycleOptimum& optimum) {
  ChartData chart;
  chart.title = "Average cycle profit by replacement age";
  chart.x_label = "Replacement age N (years)";
  chart.y_label = "Average profit (EUR/yr)";
  Polyline curve;
  for (std::size_t i = 0; i < optimum.curve.size(); ++i) {
    curve.points.push_back({static_cast<double>(i + 1), optimum.curve[i]});
  }
  if (curve.points.empty()) return chart;
  chart.lines.push_back(std::move(curve));
  chart.marker = DataPoint{static_cast<double>(optimum.n), optimum.metrics.avg_yield};
  chart.marker_label = "N* = " + std::to_string(optimum.n);
  return chart;
}

std::string render_svg(const ChartData& chart) {
  if (chart.empty()) throw std::invalid_argument("chart has no data");

  Range xr;
  Range yr;
  for (const Polyline& line : chart.lines) {
    for (const DataPoint& p : line.points) {
      xr.add(p.x);
      yr.add(p.y);
    }
  }
  for (const DataPoint& p : chart.scatter) {
    xr.add(p.x);
    yr.add(p.y);
  }
  const Axis xa = make_axis(xr);
  const Axis ya = make_axis(yr);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" << esc(chart.title)
      << "</text>\n";

  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  const int xd = tick_decimals(xa.step);
  const int yd = tick_decimals(ya.step);
  std::ostringstream labels;
  for (double x = xa.lo; x <= xa.hi + xa.step * 1e-9; x += xa.step) {
    svg << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(sx(x)) << "\" y2=\""
        << num(kTop + plot_h) << "\"/>\n";
    labels << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
           << detail::fixed(x, xd) << "</text>\n";
  }
  for (double y = ya.lo; y <= ya.hi + ya.step * 1e-9; y += ya.step) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\""
        << num(sy(y)) << "\"/>\n";
    labels << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">"
           << detail::fixed(y, yd) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<g font-size=\"12\" fill=\"#333333\">\n" << labels.str() << "</g>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
      << num(plot_h) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << esc(chart.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18 " << num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"14\">" << esc(chart.y_label) << "</text>\n";

  for (const Polyline& line : chart.lines) {
    svg << "<polyline fill=\"none\" stroke=\"" << line.color << "\" stroke-width=\"" << num(line.width) << '"';
    if (line.opacity < 1.0) svg << " stroke-opacity=\"" << num(line.opacity) << '"';
    svg << " points=\"";
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      svg << (i ? " " : "") << num(sx(line.points[i].x)) << ',' << num(sy(line.points[i].y));
    }
    svg << "\"/>\n";
  }
  for (const DataPoint& p : chart.scatter) {
    svg << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"4\" fill=\"" << chart.scatter_color
        << "\"/>\n";
  }
  if (chart.marker) {
    const double mx = sx(chart.marker->x);
    const double my = sy(chart.marker->y);
    svg << "<circle cx=\"" << num(mx) << "\" cy=\"" << num(my) << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" "
        << "stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(mx) << "\" y=\"" << num(my - 12) << "\" text-anchor=\"middle\" font-size=\"13\">"
        << esc(chart.marker_label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_chart(const ChartData& chart, const std::filesystem::path& out) {
  const std::string document = render_svg(chart);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw InputError("cannot write chart '" + out.string() + "'");
  file << document;
}

}  // namespace vinerep::report
