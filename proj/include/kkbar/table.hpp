// Plot-ready tables and their CSV / JSON serialization.
//
// Numbers are written with 17 significant digits through std::to_chars, so the
// output is locale independent and parses back to the identical double.
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kkbar {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Index of a header column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
};

std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);

/// {"meta": meta, "header": [...], "rows": [[...], ...]}
nlohmann::json to_json(const Table& table, const nlohmann::json& meta);

/// Reads back a CSV written by write_csv. Cells that parse completely as a
/// number become doubles, everything else stays a string.
Table parse_csv(std::string_view text);

}  // namespace kkbar
