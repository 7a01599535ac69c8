#pragma once

// Plot-ready CSV: '#'-prefixed metadata lines, one header row, then rows of
// numbers in 15-significant-digit decimal. Empty cells mean "not available".

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fermi::csv {

using Cell = std::optional<double>;

struct Table {
  std::vector<std::string> metadata;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column; throws FormatError if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<Cell> values(std::string_view name) const;
};

std::string format_number(double v);

void write(std::ostream& out, const Table& table);
/// Writes atomically enough for our purposes; throws IoError when the path is unwritable.
void write_file(const std::filesystem::path& path, const Table& table);

Table read(std::istream& in);
Table read_file(const std::filesystem::path& path);

}  // namespace fermi::csv
