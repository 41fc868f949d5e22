#include "commands.hpp"

#include "dlq/errors.hpp"
#include "dlq/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace dlq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<double> mass, split, root_tol, quad_tol, degeneracy_tol;
  std::optional<std::size_t> n_local, n_global;
  std::string cache_dir;

  void attach(CLI::App &cmd) {
    cmd.add_option("--config", config_path,
                   "JSON file with FieldConfig fields (and optional cache_dir)")
        ->check(CLI::ExistingFile);
    cmd.add_option("--mass", mass, "mR, dimensionless mass (default 1)");
    cmd.add_option("--split", split, "r/R, position of the virtual wall (default 0.3)");
    cmd.add_option("--n-local", n_local, "local modes per region (default 30)");
    cmd.add_option("--n-global", n_global, "global modes (default 3000)");
    cmd.add_option("--root-tol", root_tol, "spectrum residual tolerance (default 1e-12)");
    cmd.add_option("--quad-tol", quad_tol, "quadrature tolerance (default 1e-10)");
    cmd.add_option("--degeneracy-tol", degeneracy_tol,
                   "relative frequency gap that triggers the quadrature fallback (default 1e-8)");
    cmd.add_option("--cache-dir", cache_dir,
                   "directory for coefficient caches (disabled when empty)");
  }

  /// base <- config file <- flags
  FieldConfig resolve(const FieldConfig &base) {
    FieldConfig config = base;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream text;
      text << in.rdbuf();
      json file;
      try {
        file = json::parse(text.str());
      } catch (const json::parse_error &e) {
        throw ParseError(config_path + ": " + e.what());
      }
      if (!file.is_object())
        throw ParseError(config_path + ": expected a JSON object");
      if (file.contains("cache_dir")) {
        if (cache_dir.empty())
          cache_dir = file.at("cache_dir").get<std::string>();
        file.erase("cache_dir");
      }
      json merged = json::parse(config_to_json(config));
      merged.update(file);
      config = config_from_json(merged.dump());
    }
    if (mass) config.mass_times_R = *mass;
    if (split) config.split_fraction = *split;
    if (n_local) config.n_local = *n_local;
    if (n_global) config.n_global = *n_global;
    if (root_tol) config.root_tol = *root_tol;
    if (quad_tol) config.quad_tol = *quad_tol;
    if (degeneracy_tol) config.degeneracy_tol = *degeneracy_tol;
    config.validate();
    return config;
  }
};

int spectrum_command(double mass, double length, std::size_t count, double tol,
                     const std::string &out_path, std::ostream &out) {
  const auto table = solve_spectrum(mass, length, count, tol);
  std::vector<std::vector<double>> rows;
  rows.reserve(count);
  for (std::size_t I = 1; I <= count; ++I)
    rows.push_back({static_cast<double>(I), table.root(I), table.frequency(I),
                    table.phase(I), static_cast<double>(table.residual(I))});
  const std::vector<std::string> columns{"I", "P_I", "Omega_I", "Delta_I", "residual"};
  if (out_path.empty())
    out << render_table(columns, rows);
  else
    write_table(out_path, columns, rows);
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Localized Dirac quanta in a 1+1D bag cavity: spectra, figure data "
               "and diagnostics",
               "dlq"};
  app.set_version_flag("--version", DLQ_VERSION);
  app.require_subcommand(1);

  auto *spectrum = app.add_subcommand("spectrum", "roots P_I of m sin(PL) + P cos(PL) = 0");
  double mass = 0.0, length = 1.0, tol = 1e-12;
  std::size_t count = 0;
  std::string out_path;
  spectrum->add_option("--mass", mass, "mR")->required()->check(CLI::NonNegativeNumber);
  spectrum->add_option("--length", length, "interval length in units of R")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--count", count, "number of roots")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--tol", tol, "residual tolerance")->capture_default_str();
  spectrum->add_option("--out", out_path, "CSV path; standard output when omitted");

  auto *figure = app.add_subcommand("figure", "write the data behind a figure (1-5)");
  int figure_number = 0;
  std::string out_dir = ".";
  Overrides figure_overrides;
  figure->add_option("n", figure_number, "figure number")->required()->check(CLI::Range(1, 5));
  figure->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  figure_overrides.attach(*figure);

  auto *diagnose = app.add_subcommand("diagnose", "run a diagnostic and write a JSON report");
  std::string check, report_path;
  Overrides diagnose_overrides;
  diagnose->add_option("--check", check, "diagnostic to run")
      ->required()
      ->check(CLI::IsMember({"conditions", "inequivalence", "energy", "convergence"}));
  diagnose->add_option("--out", report_path, "report path; standard output when omitted");
  diagnose_overrides.attach(*diagnose);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    if (*spectrum)
      return spectrum_command(mass, length, count, tol, out_path, out);
    if (*figure) {
      const auto config = figure_overrides.resolve(figure_defaults(figure_number));
      const auto files =
          write_figure(figure_number, config, out_dir, figure_overrides.cache_dir);
      for (const auto &f : files)
        out << (fs::path(out_dir) / f).string() << '\n';
      return exit_ok;
    }
    if (*diagnose) {
      const auto config = diagnose_overrides.resolve(FieldConfig{});
      const auto outcome = run_diagnostic(check, config, diagnose_overrides.cache_dir);
      if (report_path.empty())
        out << outcome.report << '\n';
      else
        write_file_atomic(report_path, outcome.report + "\n");
      if (!outcome.passed)
        err << "dlq: diagnostic '" << check << "' failed\n";
      return outcome.passed ? exit_ok : exit_numerical;
    }
  } catch (const DomainError &e) {
    err << "dlq: invalid input: " << e.what() << '\n';
    return exit_validation;
  } catch (const ParseError &e) {
    err << "dlq: " << e.what() << '\n';
    return exit_validation;
  } catch (const SolverError &e) {
    err << "dlq: " << e.what() << '\n';
    return exit_numerical;
  } catch (const QuadratureError &e) {
    err << "dlq: " << e.what() << '\n';
    return exit_numerical;
  } catch (const IoError &e) {
    err << "dlq: " << e.what() << '\n';
    return exit_io;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "dlq: " << e.what() << '\n';
    return exit_io;
  }
  return exit_validation;
}

} // namespace dlq::cli
