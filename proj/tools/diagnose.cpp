#include "commands.hpp"

#include "dlq/errors.hpp"
#include "dlq/io.hpp"
#include "dlq/observables.hpp"

#include <json.hpp>

#include <algorithm>

namespace dlq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json series_json(const SeriesReport &s) {
  json partials = json::array();
  for (const auto &[n, v] : s.partial_sums)
    partials.push_back({{"cutoff", n}, {"sum", v}});
  json out{{"partial_sums", partials},
           {"increments", s.increments()},
           {"diverges", s.diverges},
           {"converges", s.converges},
           {"growth_model", s.growth_model}};
  if (s.extrapolated_value)
    out["extrapolated_value"] = *s.extrapolated_value;
  return out;
}

json abel_json(const AbelPathReport &r) {
  return {{"window_maxima", r.window_maxima},
          {"floor", r.floor},
          {"vanishes", r.vanishes},
          {"note", r.note}};
}

bool within_unit(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0 && x <= 1.0; });
}

DiagnosticOutcome conditions(const FieldConfig &config, const fs::path &cache_dir) {
  const auto set = load_or_build(cache_dir, config);
  const std::size_t range = std::min<std::size_t>({10, config.n_local, config.n_global});
  const auto c = check_conditions(set, range);
  const auto n_left = local_occupation(set, Region::left);
  const auto n_right = local_occupation(set, Region::right);
  const double threshold = 1e-3;
  const bool passed = c.cond1_max_err < threshold && c.cond2_max_err < threshold &&
                      c.unprimed_diagonal_max < 1.0 && within_unit(n_left) &&
                      within_unit(n_right);
  json report{{"cond1_max_err", c.cond1_max_err},
              {"cond2_max_err", c.cond2_max_err},
              {"cond3_combined_max_err", c.cond3_combined_max_err},
              {"cond4_max_err", c.cond4_max_err},
              {"unprimed_diagonal_max", c.unprimed_diagonal_max},
              {"index_range", c.index_range},
              {"threshold", threshold},
              {"occupation_left", n_left},
              {"occupation_right", n_right},
              {"fallback_count", set.fallback_count()}};
  return {passed, report.dump()};
}

DiagnosticOutcome inequivalence(const FieldConfig &config, const fs::path &cache_dir) {
  const std::vector<std::size_t> cutoffs{50, 100, 200, 400};
  FieldConfig square = config;
  square.n_local = square.n_global = cutoffs.back();
  const auto set = load_or_build(cache_dir, square);
  const auto hs = hilbert_schmidt_partials(set, cutoffs);

  std::vector<std::size_t> diag(200);
  for (std::size_t i = 0; i < diag.size(); ++i)
    diag[i] = i + 1;
  const auto diagonal = inequivalence_diagnostic(config, AbelPath::diagonal, diag, 50);
  const auto maxima = quadratic_path_dyadic_maxima(config, 20, 4);
  bool decreasing = true;
  for (std::size_t k = 1; k < maxima.size(); ++k)
    decreasing = decreasing && maxima[k] < maxima[k - 1];

  const bool passed = hs.diverges && !diagonal.vanishes && decreasing;
  json report{{"hilbert_schmidt", series_json(hs)},
              {"diagonal_path", abel_json(diagonal)},
              {"diagonal_path_non_vanishing", !diagonal.vanishes},
              {"quadratic_path_dyadic_maxima", maxima},
              {"quadratic_path_vanishing", decreasing}};
  return {passed, report.dump()};
}

DiagnosticOutcome energy(const FieldConfig &config, const fs::path &cache_dir) {
  const std::vector<std::size_t> cutoffs{500, 1000, 2000, 4000};
  FieldConfig wide = config;
  wide.n_global = std::max<std::size_t>(config.n_global, cutoffs.back());
  wide.n_local = std::max<std::size_t>(config.n_local, 3);
  const auto set = load_or_build(cache_dir, wide);
  std::vector<double> omega;
  for (std::size_t I = 1; I <= wide.n_global; ++I)
    omega.push_back(set.tables.global.frequency(I));

  bool passed = true;
  json per_mode = json::array();
  for (std::size_t i : {1, 3}) {
    const auto s = quasilocal_energy(set, i, cutoffs);
    const double slope =
        block_loglog_slope(quasilocal_energy_terms(set, i), omega, 40, cutoffs.back(), 8);
    const bool ok = s.diverges && slope >= -1.3 && slope <= -0.7;
    passed = passed && ok;
    per_mode.push_back({{"i", i}, {"series", series_json(s)}, {"term_slope", slope},
                        {"diverges", s.diverges}});
  }
  json report{{"modes", per_mode}, {"slope_window", {-1.3, -0.7}}};
  return {passed, report.dump()};
}

DiagnosticOutcome convergence(const FieldConfig &config, const fs::path &cache_dir) {
  FieldConfig wide = config;
  wide.n_local = std::max<std::size_t>(config.n_local, 400);
  wide.n_global = std::max<std::size_t>(config.n_global, 3200);
  const auto set = load_or_build(cache_dir, wide);
  const auto [row, column] = single_series_convergence(set, 1, 1);
  json report{{"sum_over_I", series_json(row)}, {"sum_over_i", series_json(column)}};
  return {row.converges && column.converges, report.dump()};
}

} // namespace

DiagnosticOutcome run_diagnostic(const std::string &check, const FieldConfig &config,
                                 const fs::path &cache_dir) {
  config.validate();
  DiagnosticOutcome outcome;
  if (check == "conditions")
    outcome = conditions(config, cache_dir);
  else if (check == "inequivalence")
    outcome = inequivalence(config, cache_dir);
  else if (check == "energy")
    outcome = energy(config, cache_dir);
  else if (check == "convergence")
    outcome = convergence(config, cache_dir);
  else
    throw DomainError("unknown diagnostic '" + check + "'");

  json report = json::parse(outcome.report);
  json wrapped{{"check", check},
               {"passed", outcome.passed},
               {"tool_version", DLQ_VERSION},
               {"config", json::parse(config_to_json(config))},
               {"results", report}};
  outcome.report = wrapped.dump(2);
  return outcome;
}

} // namespace dlq::cli
