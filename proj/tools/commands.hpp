#pragma once

#include "dlq/spectrum.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dlq::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 1,
  exit_numerical = 2,
  exit_io = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Baked-in parameters per figure; --config and flags are applied on top.
FieldConfig figure_defaults(int figure);

/// Writes the figure's CSV files and manifest.json into `dir` and returns
/// the CSV names.
std::vector<std::string> write_figure(int figure, const FieldConfig &config,
                                      const std::filesystem::path &dir,
                                      const std::filesystem::path &cache_dir);

struct DiagnosticOutcome {
  bool passed = false;
  std::string report; // JSON
};

DiagnosticOutcome run_diagnostic(const std::string &check, const FieldConfig &config,
                                 const std::filesystem::path &cache_dir);

} // namespace dlq::cli
