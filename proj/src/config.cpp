#include "fermi/config.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "fermi/errors.hpp"
#include "fermi/loa.hpp"

namespace fermi::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) throw ConfigError(std::string(what) + ": expected a number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw ConfigError(std::string(what) + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

long parse_integer(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError(std::string(what) + ": cannot parse '" + s + "' as an integer");
  }
  return v;
}

std::string format_exact(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_exact(values[i]);
  }
  return out;
}

void require_increasing(const std::vector<double>& grid, std::string_view name) {
  if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError(std::string(name) + " grid must be strictly increasing");
    }
  }
}

using Section = std::map<std::string, std::string, std::less<>>;
using Document = std::map<std::string, Section, std::less<>>;

Document parse_document(std::string_view text) {
  Document doc;
  std::string current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      doc[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (current.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside of a [section]");
    }
    doc[current][std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return doc;
}

std::optional<hardsphere::EnergyCoefficients> energy_from_section(const Section& section) {
  static constexpr std::array<std::string_view, 4> kKeys{"D1", "D2", "D3", "D4"};
  hardsphere::EnergyCoefficients c;
  int filled = 0;
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    const auto it = section.find(kKeys[i]);
    if (it == section.end() || trim(it->second).empty()) continue;
    c.d[i] = parse_double(it->second, kKeys[i]);
    if (!std::isfinite(c.d[i])) throw ConfigError("energy coefficients must be finite");
    ++filled;
  }
  if (filled == 0) return std::nullopt;
  if (filled != 4) throw ConfigError("energy coefficients D1..D4 are only partially filled");
  return c;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string_view to_string(Model model) {
  return model == Model::kHardSphere ? "hardsphere" : "loa";
}

Model parse_model(std::string_view text) {
  const auto t = trim(text);
  if (t == "hardsphere" || t == "hs") return Model::kHardSphere;
  if (t == "loa") return Model::kLoa;
  throw ConfigError("unknown model '" + std::string(t) + "' (expected hardsphere, hs or loa)");
}

std::vector<double> parse_grid(std::string_view text) {
  const auto t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (t.find(':') != std::string_view::npos) {
    const auto c1 = t.find(':');
    const auto c2 = t.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ConfigError("range grid must be start:stop:step");
    const double start = parse_double(t.substr(0, c1), "grid start");
    const double stop = parse_double(t.substr(c1 + 1, c2 - c1 - 1), "grid stop");
    const double step = parse_double(t.substr(c2 + 1), "grid step");
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop)) {
      throw ConfigError("range grid needs step > 0 and finite stop >= start");
    }
    const double count = std::round((stop - start) / step);
    if (std::abs(start + count * step - stop) > 1e-9 * step) {
      throw ConfigError("range grid: (stop - start) is not a multiple of step");
    }
    if (count > 1e7) throw ConfigError("range grid is too large");
    const auto n = static_cast<long>(count);
    for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    out.push_back(stop);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const auto comma = t.find(',', pos);
    const auto item = t.substr(pos, comma == std::string_view::npos ? t.size() - pos : comma - pos);
    out.push_back(parse_double(item, "grid value"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

ScanConfig default_config() {
  ScanConfig c;
  c.y_grid = parse_grid("0.05:0.55:0.025");
  c.beta_grid = parse_grid("1.01:2.482:0.092");
  c.dist_x = parse_grid("0:5:0.01");
  c.dist_y = {0.0, 0.2, 0.3, 0.4, 0.5};
  c.dist_beta = {1.01, 1.5, 2.482};
  return c;
}

ScanConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ScanConfig c = default_config();
  const Document doc = parse_document(text);
  auto unknown = [](std::string_view section, std::string_view key) {
    return ConfigError("unknown key '" + std::string(key) + "' in [" + std::string(section) + "]");
  };
  for (const auto& [name, section] : doc) {
    if (name == "model") {
      for (const auto& [k, v] : section) {
        if (k == "kind") c.model = parse_model(v);
        else if (k == "nu") c.nu = static_cast<int>(parse_integer(v, "nu"));
        else if (k == "k_F") c.k_fermi = parse_double(v, "k_F");
        else if (k == "y_max") c.y_max = parse_double(v, "y_max");
        else throw unknown(name, k);
      }
    } else if (name == "grid") {
      for (const auto& [k, v] : section) {
        if (k == "y") c.y_grid = parse_grid(v);
        else if (k == "beta") c.beta_grid = parse_grid(v);
        else throw unknown(name, k);
      }
    } else if (name == "quadrature") {
      for (const auto& [k, v] : section) {
        if (k == "tol") c.tol = parse_double(v, "tol");
        else if (k == "x_max") c.x_max = parse_double(v, "x_max");
        else throw unknown(name, k);
      }
    } else if (name == "dist") {
      for (const auto& [k, v] : section) {
        if (k == "x") c.dist_x = parse_grid(v);
        else if (k == "epsilon") c.epsilon = parse_double(v, "epsilon");
        else if (k == "y") c.dist_y = parse_grid(v);
        else if (k == "beta") c.dist_beta = parse_grid(v);
        else throw unknown(name, k);
      }
    } else if (name == "energy") {
      for (const auto& [k, v] : section) {
        if (k != "D1" && k != "D2" && k != "D3" && k != "D4" && k != "file") throw unknown(name, k);
      }
      c.energy = energy_from_section(section);
      const auto file = section.find("file");
      if (file != section.end() && !trim(file->second).empty()) {
        if (c.energy) throw ConfigError("[energy] gives both inline coefficients and a file");
        std::filesystem::path path(std::string(trim(file->second)));
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        c.energy = load_energy_coefficients(path);
      }
    } else if (name == "output") {
      for (const auto& [k, v] : section) {
        if (k == "dir") c.output_dir = std::string(trim(v));
        else if (k == "threads") {
          const long t = parse_integer(v, "threads");
          if (t < 0) throw ConfigError("threads must be >= 0");
          c.threads = static_cast<unsigned>(t);
        } else throw unknown(name, k);
      }
    } else {
      throw ConfigError("unknown section [" + std::string(name) + "]");
    }
  }
  return c;
}

ScanConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::optional<hardsphere::EnergyCoefficients> load_energy_coefficients(
    const std::filesystem::path& path) {
  const Document doc = parse_document(read_file(path));
  const auto it = doc.find("energy");
  if (it == doc.end()) throw ConfigError(path.string() + " has no [energy] section");
  return energy_from_section(it->second);
}

std::string serialize_config(const ScanConfig& c) {
  std::ostringstream os;
  os << "[model]\n"
     << "kind = " << to_string(c.model) << "\n"
     << "nu = " << c.nu << "\n"
     << "k_F = " << format_exact(c.k_fermi) << "\n"
     << "y_max = " << format_exact(c.y_max) << "\n\n"
     << "[grid]\n"
     << "y = " << format_list(c.y_grid) << "\n"
     << "beta = " << format_list(c.beta_grid) << "\n\n"
     << "[quadrature]\n"
     << "tol = " << format_exact(c.tol) << "\n"
     << "x_max = " << format_exact(c.x_max) << "\n\n"
     << "[dist]\n"
     << "x = " << format_list(c.dist_x) << "\n"
     << "epsilon = " << format_exact(c.epsilon) << "\n"
     << "y = " << format_list(c.dist_y) << "\n"
     << "beta = " << format_list(c.dist_beta) << "\n\n"
     << "[energy]\n";
  for (int i = 0; i < 4; ++i) {
    os << "D" << i + 1 << " =";
    if (c.energy) os << " " << format_exact(c.energy->d[i]);
    os << "\n";
  }
  os << "\n[output]\n"
     << "dir = " << c.output_dir << "\n"
     << "threads = " << c.threads << "\n";
  return os.str();
}

void validate(const ScanConfig& c) {
  if (c.nu < 1) throw ConfigError("nu must be >= 1");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(c.x_max > 1.0)) throw ConfigError("x_max must exceed 1");
  if (!(c.epsilon > 0.0 && c.epsilon < 0.1)) throw ConfigError("epsilon must lie in (0, 0.1)");
  if (!(c.k_fermi > 0.0) || !std::isfinite(c.k_fermi)) throw ConfigError("k_F must be positive");
  if (!(c.y_max > 0.0)) throw ConfigError("y_max must be positive");
  require_increasing(c.y_grid, "y");
  require_increasing(c.beta_grid, "beta");
  require_increasing(c.dist_x, "dist x");
  require_increasing(c.dist_y, "dist y");
  require_increasing(c.dist_beta, "dist beta");
  for (const auto* grid : {&c.y_grid, &c.dist_y}) {
    if (grid->front() < 0.0 || grid->back() > c.y_max) {
      throw ConfigError("y values must lie in [0, y_max]");
    }
  }
  for (const auto* grid : {&c.beta_grid, &c.dist_beta}) {
    if (grid->front() < loa::kWindowBetaMin || grid->back() > loa::kWindowBetaMax) {
      throw ConfigError("beta values must lie in the LOA window [1.01, 2.482] fm^-1");
    }
  }
  if (c.dist_x.front() < 0.0) throw ConfigError("dist x grid must be >= 0");
}

}  // namespace fermi::cli
