#pragma once

// Farm configuration files.
//
//   # comment
//   [farm]
//   horizon = 60
//   [params]
//   qc = 0.0036
//   s = 10000
//   replacement_subsidized = false
//   [plot]
//   id = 1
//   area = 4.47
//   initial_age = 20
//
// One [plot] section per plot, order preserved. Missing [params] keys keep
// their defaults; unknown keys produce warnings.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vinerep/model.hpp"

namespace vinerep::report {

struct FarmConfigFile {
  EconomicParams params;
  Farm farm;
  std::string source;
  std::vector<std::string> warnings;
};

/// Throws InputError naming the line on malformed input.
FarmConfigFile parse_farm_config(std::string_view text, std::string source = "<memory>");
FarmConfigFile load_farm_config(const std::filesystem::path& path);

/// Canonical text form; parse_farm_config(render_farm_config(c)) reproduces c.
std::string render_farm_config(const EconomicParams& params, const Farm& farm);

}  // namespace vinerep::report
