#pragma once

// Subcommand implementations behind the fermi-complexity executable. Each
// writes its files under config.output_dir (or the given directory) and
// returns an exit code plus a human-readable summary.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermi/config.hpp"
#include "fermi/csv.hpp"
#include "fermi/distribution.hpp"
#include "fermi/fitting.hpp"
#include "fermi/measures.hpp"

namespace fermi::cli {

inline constexpr std::string_view kVersion = "1.0.0";

struct CommandResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  std::string report;
};

/// One grid point of a scan; either result or error is set.
struct ScanRow {
  double parameter = 0.0;
  std::optional<measures::MeasureSet> result;
  std::string error;
};

/// Measures for every grid point of the configured model. Rows run on worker
/// threads; the returned order always follows the grid.
std::vector<ScanRow> run_scan(const ScanConfig& config);
std::vector<ScanRow> run_scan(const ScanConfig& config, Model model,
                              const std::vector<double>& grid);

/// Columns: y|beta, Z, one_minus_Z, S_cor, D_cor, C, e. Failed rows keep the
/// parameter and leave the rest blank; their diagnostics go to the metadata.
csv::Table scan_table(const ScanConfig& config, Model model, const std::vector<ScanRow>& rows);

/// The momentum window used for a model. The hard-sphere measures use
/// config.x_max; LOA always integrates the whole Gaussian tail.
double momentum_window(const ScanConfig& config, Model model);

/// Distribution for one parameter value (y or beta).
MomentumDistribution make_distribution(const ScanConfig& config, Model model, double parameter);

/// x, nbar table on the configured x grid; points within epsilon of a
/// singular point are replaced by the pair s - epsilon, s + epsilon.
csv::Table distribution_table(const ScanConfig& config, Model model, double parameter);
/// x, ln_nbar for x > 1 and nbar > 0, derived from a distribution table.
csv::Table log_table(const csv::Table& dist);

CommandResult cmd_scan(const ScanConfig& config);
CommandResult cmd_dist(const ScanConfig& config);
CommandResult cmd_figures(const ScanConfig& config);

struct Relation {
  std::string dependent;    // S_cor, D_cor, C or e
  std::string independent;  // y, one_minus_Z, S_cor, D_cor, C

  bool operator==(const Relation&) const = default;
};

/// "S_cor:y" -> {S_cor, y}. Throws FormatError on anything else.
Relation parse_relation(std::string_view text);
std::string to_string(const Relation& r);

/// The nine relations reported by default.
std::vector<Relation> default_relations();

struct ReferenceConstants {
  double a = 0.0;
  double b = 0.0;
};

/// Published (a, b) for the hard-sphere relations, when there is one.
std::optional<ReferenceConstants> reference_constants(const Relation& r);

/// S_cor: v = alpha u^beta. D_cor and C: v = 1 + alpha u^beta. e: linear.
/// Rows with a blank cell are skipped; power laws also skip u <= 0.
fit::FitResult fit_relation(const csv::Table& table, const Relation& r);

/// Fits each relation from a scan CSV. Writes fit_report.txt and
/// fit_report.csv into out_dir. Relations whose columns are blank (e without
/// energy coefficients) are reported as skipped.
CommandResult cmd_fit(const std::filesystem::path& scan_csv, std::vector<Relation> relations,
                      const std::filesystem::path& out_dir);

}  // namespace fermi::cli
