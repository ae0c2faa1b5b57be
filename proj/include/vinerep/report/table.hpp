#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vinerep::report {

enum class CellKind {
  text,
  integer,
  money,    // 2 decimals
  kg,       // 0 decimals
  benefit,  // 4 decimals
  ratio,    // 4 decimals
};

struct Column {
  std::string name;
  CellKind kind = CellKind::text;
};

/// std::monostate renders as "none".
using Cell = std::variant<std::monostate, std::string, long long, double>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RenderedTable {
  std::string text;  // aligned, for stdout
  std::string csv;   // same cell strings
};

/// Formats one cell; identical in both renderings.
std::string format_cell(const Cell& cell, CellKind kind);

/// Throws std::invalid_argument if a row's width differs from the header.
RenderedTable render_table(const Table& table);

}  // namespace vinerep::report
