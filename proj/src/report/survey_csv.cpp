#include "vinerep/report/survey_csv.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "text_util.hpp"
#include "vinerep/errors.hpp"

namespace vinerep::report {
namespace {

using detail::parse_number;
using detail::trim;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

SurveyIngest parse_survey_csv(std::string_view text, const std::string& source) {
  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    ++line_no;
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (!line.empty()) lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw InputError(source + ": missing header row");

  std::map<std::string, std::size_t, std::less<>> column;
  const auto header = split(lines.front().second);
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(std::string(header[i]), i);

  auto require = [&](std::string_view name) {
    const auto it = column.find(name);
    if (it == column.end()) throw InputError(source + ": missing column '" + std::string(name) + "'");
    return it->second;
  };
  const std::size_t farm_col = require("farm_id");
  const std::size_t age_col = require("plot_age");
  const std::size_t area_col = require("area_ha");
  const std::size_t revenue_col = require("revenue_eur");
  std::size_t production_col = 0;
  double production_scale = 1.0;
  if (const auto kg = column.find("production_kg"); kg != column.end()) {
    production_col = kg->second;
  } else if (const auto t = column.find("production_t"); t != column.end()) {
    production_col = t->second;
    production_scale = 1000.0;
  } else {
    throw InputError(source + ": missing column 'production_kg' (or 'production_t')");
  }

  SurveyIngest out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [row, line] = lines[i];
    const auto cells = split(line);
    const std::string where = source + ":" + std::to_string(row) + ": ";
    if (cells.size() < header.size()) throw InputError(where + "expected " + std::to_string(header.size()) + " fields");

    auto num = [&](std::size_t col) {
      const auto v = parse_number<double>(cells[col]);
      if (!v) throw InputError(where + "cannot parse '" + std::string(cells[col]) + "' in column '" + std::string(header[col]) + "'");
      return *v;
    };
    const auto age = parse_number<int>(cells[age_col]);
    if (!age) throw InputError(where + "cannot parse plot_age '" + std::string(cells[age_col]) + "'");

    SurveyRecord rec{std::string(cells[farm_col]), *age, num(area_col), num(production_col) * production_scale,
                     num(revenue_col)};
    std::optional<std::string> reason;
    if (rec.plot_age < 0) reason = "negative plot_age";
    else if (!(rec.area > 0.0)) reason = "area must be positive";
    else if (!(rec.production >= 0.0)) reason = "production must be nonnegative";
    else if (!(rec.revenue >= 0.0)) reason = "revenue must be nonnegative";
    if (reason) {
      out.rejected.push_back({row, *reason});
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

SurveyIngest ingest_survey_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read survey file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_survey_csv(buffer.str(), path.string());
}

}  // namespace vinerep::report
