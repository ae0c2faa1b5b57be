#include "vinerep/report/table.hpp"

#include <algorithm>
#include <stdexcept>

#include "text_util.hpp"

namespace vinerep::report {
namespace {

int decimals_of(CellKind kind) {
  switch (kind) {
    case CellKind::money:
      return 2;
    case CellKind::kg:
    case CellKind::integer:
      return 0;
    case CellKind::benefit:
    case CellKind::ratio:
      return 4;
    case CellKind::text:
      break;
  }
  return 6;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& cell, CellKind kind) {
  return std::visit(
      [kind](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "none";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else {
          return detail::fixed(v, decimals_of(kind));
        }
      },
      cell);
}

RenderedTable render_table(const Table& table) {
  const std::size_t width = table.columns.size();
  std::vector<std::vector<std::string>> cells;
  cells.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.size() != width) throw std::invalid_argument("table row width does not match header");
    std::vector<std::string> formatted;
    for (std::size_t c = 0; c < width; ++c) formatted.push_back(format_cell(row[c], table.columns[c].kind));
    cells.push_back(std::move(formatted));
  }

  std::vector<std::size_t> widths(width);
  for (std::size_t c = 0; c < width; ++c) {
    widths[c] = table.columns[c].name.size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }

  RenderedTable out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < width; ++c) {
      // text left-aligned, numbers right-aligned
      const bool left = table.columns[c].kind == CellKind::text;
      const std::string pad(widths[c] - row[c].size(), ' ');
      out.text += left ? row[c] + pad : pad + row[c];
      out.text += c + 1 < width ? "  " : "\n";
      out.csv += csv_escape(row[c]);
      out.csv += c + 1 < width ? "," : "\n";
    }
  };

  std::vector<std::string> header;
  for (const Column& col : table.columns) header.push_back(col.name);
  emit(header);
  std::string rule;
  for (std::size_t c = 0; c < width; ++c) rule += std::string(widths[c], '-') + (c + 1 < width ? "  " : "\n");
  out.text += rule;
  for (const auto& row : cells) emit(row);
  return out;
}

}  // namespace vinerep::report
