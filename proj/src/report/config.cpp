#include "vinerep/report/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"
#include "vinerep/errors.hpp"

namespace vinerep::report {
namespace {

using detail::parse_number;
using detail::trim;

enum class Section { none, farm, params, plot };

class LineError {
 public:
  LineError(const std::string& source, int line) : prefix_(source + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& message) const { throw InputError(prefix_ + message); }
  std::string warn(const std::string& message) const { return prefix_ + message; }

 private:
  std::string prefix_;
};

double number(std::string_view value, const LineError& where, std::string_view key) {
  const auto v = parse_number<double>(value);
  if (!v) where.fail("'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  return *v;
}

int integer(std::string_view value, const LineError& where, std::string_view key) {
  const auto v = parse_number<int>(value);
  if (!v) where.fail("'" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
  return *v;
}

bool boolean(std::string_view value, const LineError& where, std::string_view key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  where.fail("'" + std::string(key) + "' expects true or false, got '" + std::string(value) + "'");
}

}  // namespace

FarmConfigFile parse_farm_config(std::string_view text, std::string source) {
  FarmConfigFile cfg;
  cfg.source = source;
  cfg.farm.horizon = 60;
  Section section = Section::none;
  std::vector<int> plot_lines;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const LineError where(source, line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') where.fail("unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name == "farm") {
        section = Section::farm;
      } else if (name == "params") {
        section = Section::params;
      } else if (name == "plot") {
        section = Section::plot;
        cfg.farm.plots.push_back(Plot{std::to_string(cfg.farm.plots.size() + 1), 0.0, -1});
        plot_lines.push_back(line_no);
      } else {
        where.fail("unknown section [" + std::string(name) + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) where.fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) where.fail("missing key");
    if (value.empty()) where.fail("missing value for '" + std::string(key) + "'");

    switch (section) {
      case Section::none:
        where.fail("'" + std::string(key) + "' appears before any section");
      case Section::farm:
        if (key == "horizon") {
          cfg.farm.horizon = integer(value, where, key);
          if (cfg.farm.horizon < 1) where.fail("horizon must be at least 1");
        } else {
          cfg.warnings.push_back(where.warn("unknown key '" + std::string(key) + "' in [farm]"));
        }
        break;
      case Section::params: {
        EconomicParams& p = cfg.params;
        if (key == "qc") p.qc = number(value, where, key);
        else if (key == "p0") p.p0 = number(value, where, key);
        else if (key == "p1") p.p1 = number(value, where, key);
        else if (key == "p2") p.p2 = number(value, where, key);
        else if (key == "pu") p.pu = number(value, where, key);
        else if (key == "s") p.s = number(value, where, key);
        else if (key == "price_benefit") p.price_benefit = number(value, where, key);
        else if (key == "replacement_subsidized") p.replacement_subsidized = boolean(value, where, key);
        else cfg.warnings.push_back(where.warn("unknown key '" + std::string(key) + "' in [params]"));
        try {
          p.validate();
        } catch (const std::invalid_argument& e) {
          where.fail(e.what());
        }
        break;
      }
      case Section::plot: {
        Plot& plot = cfg.farm.plots.back();
        if (key == "id") {
          plot.id = std::string(value);
        } else if (key == "area") {
          plot.area = number(value, where, key);
          if (!(plot.area > 0.0)) where.fail("area must be positive");
        } else if (key == "initial_age") {
          plot.initial_age = integer(value, where, key);
          if (plot.initial_age < 0) where.fail("initial_age must be nonnegative");
        } else {
          cfg.warnings.push_back(where.warn("unknown key '" + std::string(key) + "' in [plot]"));
        }
        break;
      }
    }
  }

  if (cfg.farm.plots.empty()) throw InputError(source + ": no [plot] sections");
  for (std::size_t j = 0; j < cfg.farm.plots.size(); ++j) {
    const Plot& plot = cfg.farm.plots[j];
    const LineError where(source, plot_lines[j]);
    if (!(plot.area > 0.0)) where.fail("plot '" + plot.id + "' has no area");
    if (plot.initial_age < 0) where.fail("plot '" + plot.id + "' has no initial_age");
  }
  return cfg;
}

FarmConfigFile load_farm_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read farm config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_farm_config(buffer.str(), path.string());
}

std::string render_farm_config(const EconomicParams& params, const Farm& farm) {
  using detail::shortest;
  std::ostringstream out;
  out << "[farm]\n"
      << "horizon = " << farm.horizon << "\n\n"
      << "[params]\n"
      << "qc = " << shortest(params.qc) << "\n"
      << "p0 = " << shortest(params.p0) << "\n"
      << "p1 = " << shortest(params.p1) << "\n"
      << "p2 = " << shortest(params.p2) << "\n"
      << "pu = " << shortest(params.pu) << "\n"
      << "s = " << shortest(params.s) << "\n"
      << "price_benefit = " << shortest(params.price_benefit) << "\n"
      << "replacement_subsidized = " << (params.replacement_subsidized ? "true" : "false") << "\n";
  for (const Plot& plot : farm.plots) {
    out << "\n[plot]\n"
        << "id = " << plot.id << "\n"
        << "area = " << shortest(plot.area) << "\n"
        << "initial_age = " << plot.initial_age << "\n";
  }
  return out.str();
}

}  // namespace vinerep::report
