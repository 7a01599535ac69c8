#include "fermi/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fermi/errors.hpp"

namespace fermi::csv {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw FormatError("missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool Table::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<Cell> Table::values(std::string_view name) const {
  const auto idx = column(name);
  std::vector<Cell> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(idx < row.size() ? row[idx] : std::nullopt);
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write(std::ostream& out, const Table& table) {
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

void write_file(const std::filesystem::path& path, const Table& table) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write(out, table);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto text = line.substr(1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      t.metadata.push_back(text);
      continue;
    }
    auto cells = split(line);
    if (!have_header) {
      for (auto& c : cells) t.columns.push_back(strip(c));
      have_header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(t.columns.size()) + " cells, found " +
                        std::to_string(cells.size()));
    }
    std::vector<Cell> row;
    for (const auto& raw : cells) {
      const auto c = strip(raw);
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end != c.c_str() + c.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": '" + c + "' is not a number");
      }
      row.emplace_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw FormatError("CSV has no header row");
  return t;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read(in);
}

}  // namespace fermi::csv
