// Copyright 2026 The gemsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gemsim::harness {

inline constexpr const char* csv_schema_line = "# gemsim-csv v1";

using Cell = std::variant<double, std::string>;

/// Column-named table. Numbers are written as %.17e; NaN as "nan" (not applicable).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column, if present.
  std::optional<std::size_t> column(const std::string& name) const;
  /// Numeric value of a cell; throws ConfigError for text cells.
  double number(std::size_t row, std::size_t col) const;
};

std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

/// Reads a CSV with an optional schema/comment preamble and a header row.
/// Cells that parse as numbers (including nan) become numbers.
Table read_csv(std::istream& in);
Table read_csv(const std::filesystem::path& path);

}  // namespace gemsim::harness
