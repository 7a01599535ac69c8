#pragma once

// Scan configuration: a flat "key = value" file with [section] headers.
//
//   [model]       kind (hardsphere | loa), nu, k_F, y_max
//   [grid]        y, beta
//   [quadrature]  tol, x_max
//   [dist]        x, epsilon, y, beta
//   [energy]      D1, D2, D3, D4 (blank = not supplied), file
//   [output]      dir, threads
//
// Grids are comma-separated lists or inclusive ranges "start:stop:step".
// '#' and ';' start comments.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermi/hardsphere.hpp"

namespace fermi::cli {

enum class Model { kHardSphere, kLoa };

std::string_view to_string(Model model);
/// Accepts "hardsphere", "hs" and "loa".
Model parse_model(std::string_view text);

struct ScanConfig {
  Model model = Model::kHardSphere;
  int nu = 4;
  double k_fermi = 1.33;  // fm^-1, LOA only
  double y_max = hardsphere::kDefaultYMax;
  std::vector<double> y_grid;
  std::vector<double> beta_grid;
  double tol = 1e-8;
  /// Momentum window for S_cor and D_cor; "inf" integrates the whole tail.
  double x_max = 5.0;
  std::vector<double> dist_x;
  double epsilon = 1e-6;
  std::vector<double> dist_y;
  std::vector<double> dist_beta;
  std::optional<hardsphere::EnergyCoefficients> energy;
  std::string output_dir = "out";
  unsigned threads = 0;  // 0 = hardware concurrency

  bool operator==(const ScanConfig&) const = default;
};

ScanConfig default_config();

/// Parses on top of the defaults. Relative energy files resolve against base_dir.
ScanConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ScanConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ScanConfig& config);

/// Throws ConfigError on empty or non-increasing grids, values outside the
/// validity windows, or non-positive tolerances.
void validate(const ScanConfig& config);

/// Reads only the [energy] section of a file. All D_i blank gives nullopt;
/// a partially filled block is an error.
std::optional<hardsphere::EnergyCoefficients> load_energy_coefficients(
    const std::filesystem::path& path);

std::vector<double> parse_grid(std::string_view text);

}  // namespace fermi::cli
