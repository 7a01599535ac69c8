// fermi-complexity: scans, distribution dumps, fits and figure data for the
// hard-sphere Fermi gas and the LOA nuclear-matter model.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fermi/commands.hpp"
#include "fermi/config.hpp"
#include "fermi/errors.hpp"

namespace {

using fermi::cli::ScanConfig;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

ScanConfig resolve_config(const std::string& path_flag) {
  if (!path_flag.empty()) return fermi::cli::load_config(path_flag);
  if (const char* env = std::getenv("FERMI_COMPLEXITY_CONFIG"); env && *env) {
    return fermi::cli::load_config(env);
  }
  return fermi::cli::default_config();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy, disequilibrium and LMC complexity of correlated Fermi systems"};
  app.set_version_flag("--version", std::string(fermi::cli::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string model;
  std::optional<double> tol;
  app.add_option("--config", config_path,
                 "Config file (default: $FERMI_COMPLEXITY_CONFIG, then built-in defaults)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--model", model, "hs or loa")
      ->check(CLI::IsMember({"hs", "hardsphere", "loa"}));
  app.add_option("--tol", tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);

  auto* dist = app.add_subcommand("dist", "Dump nbar(x) and ln nbar(x) tables");
  auto* scan = app.add_subcommand("scan", "S_cor, D_cor, C over the parameter grid");
  auto* figures = app.add_subcommand("figures", "Write every figure data file");
  auto* fit = app.add_subcommand("fit", "Fit power-law and linear relations to a scan CSV");
  std::string fit_input;
  std::vector<std::string> relations;
  fit->add_option("--input", fit_input, "Scan CSV (default: <out>/scan_hardsphere.csv)");
  fit->add_option("--relation", relations, "DEPENDENT:INDEPENDENT, e.g. S_cor:y (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    ScanConfig config = resolve_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (!model.empty()) config.model = fermi::cli::parse_model(model);
    if (tol) config.tol = *tol;
    fermi::cli::validate(config);
    if (config.y_max > fermi::hardsphere::kDefaultYMax) {
      std::cerr << "warning: y_max = " << config.y_max
                << " goes beyond the range where the second-order expansion is reliable\n";
    }

    fermi::cli::CommandResult result;
    if (*dist) {
      result = fermi::cli::cmd_dist(config);
    } else if (*scan) {
      result = fermi::cli::cmd_scan(config);
    } else if (*figures) {
      result = fermi::cli::cmd_figures(config);
    } else {
      std::vector<fermi::cli::Relation> parsed;
      for (const auto& r : relations) parsed.push_back(fermi::cli::parse_relation(r));
      const std::filesystem::path input =
          fit_input.empty() ? std::filesystem::path(config.output_dir) / "scan_hardsphere.csv"
                            : std::filesystem::path(fit_input);
      result = fermi::cli::cmd_fit(input, std::move(parsed), config.output_dir);
    }
    std::cout << result.report;
    return result.exit_code;
  } catch (const fermi::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
