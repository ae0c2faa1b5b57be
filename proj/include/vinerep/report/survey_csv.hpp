#pragma once

// Survey CSV: header row, ',' separator, '.' decimal point. Required columns
// farm_id, plot_age, area_ha, revenue_eur and one of production_kg or
// production_t (tonnes, converted to kg). Extra columns are ignored.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vinerep/surveyfit.hpp"

namespace vinerep::report {

struct RejectedRow {
  int row = 0;  // 1-based file line
  std::string reason;
};

struct SurveyIngest {
  std::vector<SurveyRecord> records;
  std::vector<RejectedRow> rejected;
};

/// Rows violating record invariants are rejected and listed; a missing column
/// or an unparsable number throws InputError.
SurveyIngest parse_survey_csv(std::string_view text, const std::string& source = "<memory>");
SurveyIngest ingest_survey_csv(const std::filesystem::path& path);

}  // namespace vinerep::report
