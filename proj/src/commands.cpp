#include "fermi/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "fermi/errors.hpp"
#include "fermi/hardsphere.hpp"
#include "fermi/loa.hpp"

namespace fermi::cli {
namespace {

namespace fs = std::filesystem;

std::string num(double v) { return csv::format_number(v); }

std::string parameter_name(Model model) { return model == Model::kHardSphere ? "y" : "beta"; }

std::vector<std::string> common_metadata(const ScanConfig& c, std::string_view command,
                                         Model model) {
  std::vector<std::string> m;
  m.push_back("fermi-complexity " + std::string(kVersion));
  m.push_back("command=" + std::string(command));
  m.push_back("model=" + std::string(to_string(model)));
  if (model == Model::kHardSphere) {
    m.push_back("nu=" + std::to_string(c.nu));
  } else {
    m.push_back("k_F=" + num(c.k_fermi) + " fm^-1");
  }
  m.push_back("tol=" + num(c.tol));
  m.push_back("x_max=" + num(momentum_window(c, model)));
  return m;
}

unsigned worker_count(const ScanConfig& c, std::size_t jobs) {
  unsigned n = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

ScanRow evaluate_row(const ScanConfig& c, Model model, double parameter) {
  ScanRow row;
  row.parameter = parameter;
  try {
    const auto dist = make_distribution(c, model, parameter);
    measures::Options opts;
    opts.tol = c.tol;
    opts.x_max = momentum_window(c, model);
    double z;
    std::optional<double> energy;
    if (model == Model::kHardSphere) {
      const hardsphere::HardSphereParams p{c.nu, parameter};
      z = hardsphere::discontinuity(p);
      if (c.energy) energy = hardsphere::energy_ratio(parameter, *c.energy);
    } else {
      z = loa::discontinuity({c.k_fermi, parameter});
    }
    row.result = measures::evaluate(dist, parameter, z, energy, opts);
  } catch (const quad::QuadratureError& e) {
    std::ostringstream os;
    os << e.what() << " (best estimate " << num(e.best_estimate().value) << " +- "
       << num(e.best_estimate().error_estimate);
    if (e.abscissa()) os << ", x = " << num(*e.abscissa());
    os << ")";
    row.error = os.str();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string file_tag(double v) {
  std::string s = num(v);
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

fs::path dist_path(const ScanConfig& c, std::string_view prefix, Model model, double parameter) {
  std::string name(prefix);
  name += model == Model::kHardSphere ? "hardsphere_y" : "loa_beta";
  name += file_tag(parameter);
  return fs::path(c.output_dir) / name;
}

bool is_blank(const std::vector<csv::Cell>& column) {
  return std::none_of(column.begin(), column.end(), [](const csv::Cell& c) { return c.has_value(); });
}

void append_rows_failed(std::string& report, const std::vector<ScanRow>& rows, Model model) {
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      report += "row " + parameter_name(model) + "=" + num(r.parameter) + " failed: " + r.error + "\n";
    }
  }
}

bool any_failed(const std::vector<ScanRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return !r.error.empty(); });
}

}  // namespace

double momentum_window(const ScanConfig& config, Model model) {
  return model == Model::kHardSphere ? config.x_max : std::numeric_limits<double>::infinity();
}

MomentumDistribution make_distribution(const ScanConfig& c, Model model, double parameter) {
  if (model == Model::kHardSphere) {
    const hardsphere::HardSphereParams p{c.nu, parameter};
    hardsphere::validate(p, c.y_max);
    return hardsphere::as_distribution(p);
  }
  const loa::LoaParams p{c.k_fermi, parameter};
  loa::validate(p);
  return loa::as_distribution(p);
}

std::vector<ScanRow> run_scan(const ScanConfig& config) {
  return run_scan(config, config.model,
                  config.model == Model::kHardSphere ? config.y_grid : config.beta_grid);
}

std::vector<ScanRow> run_scan(const ScanConfig& config, Model model,
                              const std::vector<double>& grid) {
  std::vector<ScanRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i] = evaluate_row(config, model, grid[i]);
    }
  };
  const unsigned n = worker_count(config, grid.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

csv::Table scan_table(const ScanConfig& config, Model model, const std::vector<ScanRow>& rows) {
  csv::Table t;
  t.metadata = common_metadata(config, "scan", model);
  if (model == Model::kHardSphere) {
    t.metadata.push_back(config.energy ? "energy=supplied" : "energy=absent (e column blank)");
  }
  t.columns = {parameter_name(model), "Z", "one_minus_Z", "S_cor", "D_cor", "C", "e"};
  for (const auto& r : rows) {
    std::vector<csv::Cell> cells(t.columns.size());
    cells[0] = r.parameter;
    if (r.result) {
      const auto& m = *r.result;
      cells[1] = m.z;
      cells[2] = 1.0 - m.z;
      cells[3] = m.s_cor;
      cells[4] = m.d_cor;
      cells[5] = m.complexity;
      cells[6] = m.energy;
    } else {
      t.metadata.push_back("error " + parameter_name(model) + "=" + num(r.parameter) + ": " + r.error);
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CommandResult cmd_scan(const ScanConfig& config) {
  validate(config);
  CommandResult out;
  const auto rows = run_scan(config);
  const auto path =
      fs::path(config.output_dir) / ("scan_" + std::string(to_string(config.model)) + ".csv");
  csv::write_file(path, scan_table(config, config.model, rows));
  out.files.push_back(path);
  out.report = "wrote " + path.string() + " (" + std::to_string(rows.size()) + " rows)\n";
  append_rows_failed(out.report, rows, config.model);
  out.exit_code = any_failed(rows) ? 1 : 0;
  return out;
}

csv::Table distribution_table(const ScanConfig& c, Model model, double parameter) {
  const auto dist = make_distribution(c, model, parameter);
  csv::Table t;
  t.metadata = common_metadata(c, "dist", model);
  t.metadata.push_back(parameter_name(model) + "=" + num(parameter));
  t.metadata.push_back("epsilon=" + num(c.epsilon) + " (one-sided rows at singular points)");
  t.columns = {"x", "nbar"};

  std::vector<double> xs;
  const double lo = c.dist_x.front();
  const double hi = c.dist_x.back();
  const auto& sing = dist.singular_points();
  for (double x : c.dist_x) {
    const bool near = std::any_of(sing.begin(), sing.end(),
                                  [&](double s) { return std::abs(x - s) <= c.epsilon; });
    if (!near) xs.push_back(x);
  }
  for (double s : sing) {
    if (s - c.epsilon >= lo && s - c.epsilon <= hi) xs.push_back(s - c.epsilon);
    if (s + c.epsilon >= lo && s + c.epsilon <= hi) xs.push_back(s + c.epsilon);
  }
  std::sort(xs.begin(), xs.end());
  for (double x : xs) t.rows.push_back({x, dist(x)});
  return t;
}

csv::Table log_table(const csv::Table& dist) {
  csv::Table t;
  t.metadata = dist.metadata;
  t.metadata.push_back("natural log of nbar for x > 1");
  t.columns = {"x", "ln_nbar"};
  const auto x = dist.values("x");
  const auto n = dist.values("nbar");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && n[i] && *x[i] > 1.0 && *n[i] > 0.0) t.rows.push_back({*x[i], std::log(*n[i])});
  }
  return t;
}

CommandResult cmd_dist(const ScanConfig& config) {
  validate(config);
  CommandResult out;
  const auto& params = config.model == Model::kHardSphere ? config.dist_y : config.dist_beta;
  for (double p : params) {
    const auto table = distribution_table(config, config.model, p);
    auto base = dist_path(config, "dist_", config.model, p);
    const fs::path linear = base.string() + ".csv";
    const fs::path logp = base.string() + "_log.csv";
    csv::write_file(linear, table);
    csv::write_file(logp, log_table(table));
    out.files.push_back(linear);
    out.files.push_back(logp);
    out.report += "wrote " + linear.string() + " and " + logp.string() + "\n";
  }
  return out;
}

CommandResult cmd_figures(const ScanConfig& config) {
  validate(config);
  CommandResult out;
  const fs::path dir(config.output_dir);
  auto emit = [&](const fs::path& path, const csv::Table& t) {
    csv::write_file(path, t);
    out.files.push_back(path);
    out.report += "wrote " + path.string() + "\n";
  };
  auto with_command = [](csv::Table t, const std::string& fig) {
    t.metadata[1] = "command=figures " + fig;
    return t;
  };

  // Momentum distributions, linear and log.
  for (double y : config.dist_y) {
    const auto t = with_command(distribution_table(config, Model::kHardSphere, y), "fig1");
    emit(dist_path(config, "fig1_nbar_", Model::kHardSphere, y).string() + ".csv", t);
    emit(dist_path(config, "fig1_log_nbar_", Model::kHardSphere, y).string() + ".csv",
         log_table(t));
  }

  // Measures versus y, with and without energy.
  const auto hs_rows = run_scan(config, Model::kHardSphere, config.y_grid);
  const auto hs_table = scan_table(config, Model::kHardSphere, hs_rows);
  {
    auto t = with_command(hs_table, "fig2");
    t.columns.pop_back();
    for (auto& r : t.rows) r.pop_back();
    emit(dir / "fig2_measures_vs_y.csv", t);
  }
  emit(dir / "fig3_measures_energy_vs_y.csv", with_command(hs_table, "fig3"));

  // Energy against each measure.
  {
    csv::Table t;
    t.metadata = common_metadata(config, "figures fig4", Model::kHardSphere);
    t.columns = {"y", "e", "S_cor", "D_cor", "C"};
    if (!config.energy) {
      t.metadata.push_back("energy coefficients absent: no rows; supply D1..D4 in [energy]");
      out.report += "notice: energy coefficients absent, fig4 has no data rows\n";
    } else {
      for (const auto& r : hs_rows) {
        if (!r.result) continue;
        const auto& m = *r.result;
        t.rows.push_back({m.parameter, m.energy, m.s_cor, m.d_cor, m.complexity});
      }
      for (const char* u : {"S_cor", "D_cor", "C"}) {
        try {
          const auto f = fit_relation(hs_table, {"e", u});
          t.metadata.push_back("fit e = " + num(f.a) + " + " + num(f.b) + " " + u +
                               ", R^2 = " + num(f.r_squared));
        } catch (const std::exception& e) {
          t.metadata.push_back(std::string("fit e vs ") + u + " failed: " + e.what());
        }
      }
    }
    emit(dir / "fig4_energy_relations.csv", t);
  }

  // Both models against 1 - Z on a shared range.
  const auto loa_rows = run_scan(config, Model::kLoa, config.beta_grid);
  {
    auto t = scan_table(config, Model::kLoa, loa_rows);
    t.metadata[1] = "command=figures fig5";
    t.columns.pop_back();
    for (auto& r : t.rows) r.pop_back();
    emit(dir / "fig5_loa_vs_one_minus_Z.csv", t);
  }
  std::vector<double> matched;
  const double ln2 = std::numbers::ln2;
  const double pi = std::numbers::pi;
  for (const auto& r : loa_rows) {
    if (!r.result) continue;
    const double w = 1.0 - r.result->z;
    const double y = std::sqrt(w * pi * pi / (4.0 * ln2 * (config.nu - 1)));
    if (y <= config.y_max) matched.push_back(y);
  }
  std::sort(matched.begin(), matched.end());
  matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
  const auto hs_matched = run_scan(config, Model::kHardSphere, matched);
  {
    auto t = scan_table(config, Model::kHardSphere, hs_matched);
    t.metadata[1] = "command=figures fig5";
    t.metadata.push_back("y chosen so that 1 - Z matches the LOA rows");
    t.columns.pop_back();
    for (auto& r : t.rows) r.pop_back();
    emit(dir / "fig5_hs_vs_one_minus_Z.csv", t);
  }

  append_rows_failed(out.report, hs_rows, Model::kHardSphere);
  append_rows_failed(out.report, loa_rows, Model::kLoa);
  append_rows_failed(out.report, hs_matched, Model::kHardSphere);
  out.exit_code = (any_failed(hs_rows) || any_failed(loa_rows) || any_failed(hs_matched)) ? 1 : 0;
  return out;
}

Relation parse_relation(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw FormatError("relation '" + std::string(text) + "' must look like DEPENDENT:INDEPENDENT");
  }
  Relation r{std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
  static const std::vector<std::string> dependents{"S_cor", "D_cor", "C", "e"};
  static const std::vector<std::string> independents{"y", "beta", "one_minus_Z", "S_cor",
                                                     "D_cor", "C"};
  if (std::find(dependents.begin(), dependents.end(), r.dependent) == dependents.end()) {
    throw FormatError("unsupported dependent variable '" + r.dependent + "'");
  }
  if (std::find(independents.begin(), independents.end(), r.independent) == independents.end() ||
      r.independent == r.dependent) {
    throw FormatError("unsupported independent variable '" + r.independent + "'");
  }
  return r;
}

std::string to_string(const Relation& r) { return r.dependent + ":" + r.independent; }

std::vector<Relation> default_relations() {
  return {{"S_cor", "y"},           {"D_cor", "y"},           {"C", "y"},
          {"S_cor", "one_minus_Z"}, {"D_cor", "one_minus_Z"}, {"C", "one_minus_Z"},
          {"e", "S_cor"},           {"e", "D_cor"},           {"e", "C"}};
}

std::optional<ReferenceConstants> reference_constants(const Relation& r) {
  struct Entry {
    const char* dep;
    const char* indep;
    ReferenceConstants c;
  };
  static const Entry table[] = {
      {"S_cor", "y", {2.16379, 1.67053}},
      {"D_cor", "y", {-0.79871, 1.83155}},
      {"C", "y", {1.68358, 1.67566}},
      {"S_cor", "one_minus_Z", {2.49614, 0.83527}},
      {"D_cor", "one_minus_Z", {-0.93413, 0.91574}},
      {"C", "one_minus_Z", {1.94305, 0.83784}},
      {"e", "S_cor", {1.0479, 1.27353}},
      {"e", "D_cor", {4.6861, -3.5985}},
      {"e", "C", {-0.5847, 1.6358}},
  };
  for (const auto& e : table) {
    if (r.dependent == e.dep && r.independent == e.indep) return e.c;
  }
  return std::nullopt;
}

fit::FitResult fit_relation(const csv::Table& table, const Relation& r) {
  const auto u = table.values(r.independent);
  const auto v = table.values(r.dependent);
  const bool linear = r.dependent == "e";
  std::vector<fit::Point> pts;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i] || !v[i]) continue;
    if (!linear && !(*u[i] > 0.0)) continue;
    pts.push_back({*u[i], *v[i]});
  }
  if (linear) return fit::fit_linear(pts);
  return fit::fit_power_law(pts, r.dependent == "S_cor" ? 0.0 : 1.0);
}

CommandResult cmd_fit(const fs::path& scan_csv, std::vector<Relation> relations,
                      const fs::path& out_dir) {
  const auto table = csv::read_file(scan_csv);
  if (relations.empty()) {
    for (const auto& r : default_relations()) {
      if (table.has_column(r.independent) && table.has_column(r.dependent)) relations.push_back(r);
    }
  }
  for (const auto& r : relations) {
    table.column(r.dependent);
    table.column(r.independent);
  }

  CommandResult out;
  std::ostringstream txt;
  std::ostringstream csvout;
  txt << "fit report for " << scan_csv.string() << "\n";
  csvout << "# fermi-complexity " << kVersion << "\n# command=fit\n# input=" << scan_csv.string()
         << "\n";
  csvout << "relation,model,a,b,offset,rms,r_squared,n_points,ref_a,ref_b\n";
  char line[512];
  for (const auto& r : relations) {
    const auto ref = reference_constants(r);
    const std::string name = to_string(r);
    if (is_blank(table.values(r.dependent)) || is_blank(table.values(r.independent))) {
      txt << name << ": skipped, column " << (is_blank(table.values(r.dependent)) ? r.dependent : r.independent)
          << " is blank";
      if (r.dependent == "e") txt << " (energy coefficients not supplied)";
      txt << "\n";
      continue;
    }
    try {
      const auto f = fit_relation(table, r);
      const bool linear = f.kind == fit::ModelKind::kLinear;
      std::snprintf(line, sizeof line,
                    "%-18s %-18s %s=%.6g %s=%.6g rms=%.3g R^2=%.8f n=%zu", name.c_str(),
                    std::string(fit::to_string(f.kind)).c_str(), linear ? "intercept" : "alpha",
                    f.a, linear ? "slope" : "beta", f.b, f.rms, f.r_squared, f.n_points);
      txt << line;
      if (ref) {
        std::snprintf(line, sizeof line, "  reference (%.6g, %.6g)  ratio (%.4f, %.4f)", ref->a,
                      ref->b, f.a / ref->a, f.b / ref->b);
        txt << line;
      }
      txt << "\n";
      csvout << name << ',' << fit::to_string(f.kind) << ',' << num(f.a) << ',' << num(f.b) << ','
             << num(f.offset) << ',' << num(f.rms) << ',' << num(f.r_squared) << ','
             << f.n_points << ',' << (ref ? num(ref->a) : "") << ',' << (ref ? num(ref->b) : "")
             << '\n';
    } catch (const std::exception& e) {
      txt << name << ": fit failed: " << e.what() << "\n";
      out.exit_code = 1;
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  for (const auto& [file, body] :
       {std::pair{out_dir / "fit_report.txt", txt.str()}, std::pair{out_dir / "fit_report.csv", csvout.str()}}) {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + file.string() + " for writing");
    os << body;
    if (!os.flush()) throw IoError("write to " + file.string() + " failed");
    out.files.push_back(file);
  }
  out.report = txt.str();
  return out;
}

}  // namespace fermi::cli
