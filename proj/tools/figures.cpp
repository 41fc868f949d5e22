#include "commands.hpp"

#include "dlq/errors.hpp"
#include "dlq/evolution.hpp"
#include "dlq/io.hpp"
#include "dlq/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dlq::cli {

namespace fs = std::filesystem;

namespace {

using Rows = std::vector<std::vector<double>>;

std::string time_label(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

std::vector<std::string> figure1(const FieldConfig &config, const fs::path &dir,
                                 const fs::path &cache_dir) {
  const auto set = load_or_build(cache_dir, config);
  const auto grid = uniform_grid(801);
  const std::vector<double> times{0.0, 0.3, 0.6};
  const double r = config.split_fraction;
  const ModeSpec plus{ModeFamily::local_left, 1, FrequencySign::plus};
  const ModeSpec minus{ModeFamily::local_left, 1, FrequencySign::minus};
  const auto dp = density_profile(plus, times, grid, set);
  const auto dm = density_profile(minus, times, grid, set);

  std::vector<std::string> columns{"x"};
  for (const char *sign : {"plus", "minus"})
    for (double t : times)
      columns.push_back(std::string("density_") + sign + "_t" + time_label(t));
  Rows density;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row{grid[k]};
    for (const auto *profile : {&dp, &dm})
      for (std::size_t ti = 0; ti < times.size(); ++ti)
        row.push_back(profile->at(ti, k));
    density.push_back(std::move(row));
  }
  write_table(dir / "fig1_density.csv", columns, density);

  Rows fronts;
  const double parseval_plus = parseval_residual(plus, set);
  const double parseval_minus = parseval_residual(minus, set);
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    const bool inside = r + t + 0.05 < 1.0;
    fronts.push_back({t, r + t,
                      density_front(dp.row(ti), grid, ModeFamily::local_left),
                      density_front(dm.row(ti), grid, ModeFamily::local_left),
                      inside ? causality_leakage(plus, t, set, 0.05) : std::nan(""),
                      inside ? causality_leakage(minus, t, set, 0.05) : std::nan(""),
                      parseval_plus, parseval_minus});
  }
  write_table(dir / "fig1_front.csv",
              {"t", "light_cone", "front_plus", "front_minus", "leakage_plus",
               "leakage_minus", "parseval_plus", "parseval_minus"},
              fronts);
  return {"fig1_density.csv", "fig1_front.csv"};
}

std::vector<std::string> figure2(const FieldConfig &config, const fs::path &dir,
                                 const fs::path &cache_dir) {
  const std::size_t I = 3;
  std::vector<std::size_t> counts;
  for (std::size_t n : {15, 50, 200})
    if (n <= config.n_local)
      counts.push_back(n);
  if (counts.empty() || config.n_global < I)
    throw DomainError("figure 2 needs n_local >= 15 and n_global >= 3");
  const auto set = load_or_build(cache_dir, config);
  const auto grid = uniform_grid(801);
  const auto &table = set.tables.global;
  const ModeSpec spec{ModeFamily::global, I, FrequencySign::plus};

  std::vector<std::vector<SpinorValue>> partial;
  for (std::size_t n : counts)
    partial.push_back(reconstruct_global_mode(I, FrequencySign::plus, n, grid, set));

  std::vector<std::string> columns{"x", "exact_re", "exact_im"};
  for (std::size_t n : counts) {
    columns.push_back("terms" + std::to_string(n) + "_re");
    columns.push_back("terms" + std::to_string(n) + "_im");
  }
  Rows rows;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto exact = stationary_mode(spec, grid[k], 0.0, table).upper;
    std::vector<double> row{grid[k], exact.real(), exact.imag()};
    for (const auto &p : partial) {
      row.push_back(p[k].upper.real());
      row.push_back(p[k].upper.imag());
    }
    rows.push_back(std::move(row));
  }
  write_table(dir / "fig2_components.csv", columns, rows);

  Rows errors;
  for (const auto &p : expand_global_in_local(I, FrequencySign::plus, counts, set))
    errors.push_back({static_cast<double>(p.terms), p.l2_error_squared, p.parseval_residual});
  write_table(dir / "fig2_errors.csv", {"terms", "l2_error_squared", "parseval_residual"},
              errors);
  return {"fig2_components.csv", "fig2_errors.csv"};
}

struct Spectrum {
  double mass, split;
  std::vector<double> omega;
  StreamedOccupation n;
};

Spectrum local_spectrum(FieldConfig config, double mass, double split) {
  config.mass_times_R = mass;
  config.split_fraction = split;
  config.n_global = std::max<std::size_t>(
      config.n_global,
      static_cast<std::size_t>(std::ceil(64.0 / (std::numbers::pi * split))));
  Spectrum s{mass, split, {}, streamed_local_occupation(config, Region::left)};
  const auto table = solve_spectrum(mass, split, config.n_local, config.root_tol);
  for (std::size_t i = 1; i <= config.n_local; ++i)
    s.omega.push_back(table.frequency(i));
  return s;
}

std::vector<std::vector<Spectrum>> figure3_spectra(const FieldConfig &config) {
  std::vector<Spectrum> a, b;
  for (double m : {0.0, 10.0})
    a.push_back(local_spectrum(config, m, config.split_fraction));
  for (double r : {5e-5, 0.01, 0.5})
    b.push_back(local_spectrum(config, config.mass_times_R, r));
  return {a, b};
}

std::vector<std::string> figure3(const FieldConfig &config, const fs::path &dir) {
  const auto panels = figure3_spectra(config);
  const char *names[] = {"fig3a_spectra.csv", "fig3b_spectra.csv"};
  for (std::size_t p = 0; p < 2; ++p) {
    Rows rows;
    for (const auto &s : panels[p])
      for (std::size_t i = 0; i < s.omega.size(); ++i)
        rows.push_back({s.mass, s.split, static_cast<double>(i + 1), s.omega[i],
                        s.n.occupation[i], s.n.tail_estimate[i],
                        static_cast<double>(s.n.n_global)});
    write_table(dir / names[p],
                {"mass", "split", "i", "omega", "occupation", "tail_estimate", "n_global"},
                rows);
  }
  return {names[0], names[1]};
}

std::vector<std::string> figure4(const FieldConfig &config, const fs::path &dir) {
  const auto panels = figure3_spectra(config);
  Rows rows;
  for (std::size_t p = 0; p < 2; ++p)
    for (const auto &s : panels[p]) {
      const auto t = effective_temperature(s.n.occupation, s.omega);
      for (std::size_t i = 0; i < s.omega.size(); ++i)
        rows.push_back({static_cast<double>(p + 1), s.mass, s.split,
                        static_cast<double>(i + 1), s.omega[i], s.n.occupation[i],
                        t.temperature[i], static_cast<double>(t.inverted[i])});
    }
  write_table(dir / "fig4_temperature.csv",
              {"panel", "mass", "split", "i", "omega", "occupation", "temperature", "inverted"},
              rows);
  return {"fig4_temperature.csv"};
}

std::vector<std::string> figure5(const FieldConfig &config, const fs::path &dir,
                                 const fs::path &cache_dir) {
  const auto set = load_or_build(cache_dir, config);
  const std::size_t n = config.n_local;
  const auto pp = vacuum_correlation(set, CorrelationChannel::particle_particle, n, n);
  const auto pa = vacuum_correlation(set, CorrelationChannel::particle_antiparticle, n, n);
  Rows rows;
  for (std::size_t l = 1; l <= n; ++l)
    for (std::size_t k = 1; k <= n; ++k)
      rows.push_back({static_cast<double>(l), static_cast<double>(k),
                      set.tables.left.frequency(l), set.tables.right.frequency(k),
                      pp.at(l, k), pa.at(l, k), std::abs(pp.at(l, k)), std::abs(pa.at(l, k))});
  write_table(dir / "fig5_correlations.csv",
              {"l", "k", "omega_l", "omega_prime_k", "corr_pp", "corr_pa", "abs_pp", "abs_pa"},
              rows);
  return {"fig5_correlations.csv"};
}

} // namespace

FieldConfig figure_defaults(int figure) {
  FieldConfig c;
  switch (figure) {
  case 1:
    c.mass_times_R = 0.5;
    c.split_fraction = 0.3;
    c.n_local = 1;
    c.n_global = 400;
    break;
  case 2:
    c.mass_times_R = 0.5;
    c.split_fraction = 0.3;
    c.n_local = 200;
    c.n_global = 3;
    break;
  case 3:
  case 4:
    c.mass_times_R = 1.0;
    c.split_fraction = 1.0 / std::numbers::pi;
    c.n_local = 30;
    c.n_global = 3000;
    break;
  case 5:
    c.mass_times_R = 0.0;
    c.split_fraction = 1.0 / std::numbers::pi;
    c.n_local = 30;
    c.n_global = 1000;
    break;
  default:
    throw DomainError("figure number must be 1-5");
  }
  return c;
}

std::vector<std::string> write_figure(int figure, const FieldConfig &config,
                                      const fs::path &dir, const fs::path &cache_dir) {
  config.validate();
  fs::create_directories(dir);
  std::vector<std::string> files;
  switch (figure) {
  case 1: files = figure1(config, dir, cache_dir); break;
  case 2: files = figure2(config, dir, cache_dir); break;
  case 3: files = figure3(config, dir); break;
  case 4: files = figure4(config, dir); break;
  case 5: files = figure5(config, dir, cache_dir); break;
  default: throw DomainError("figure number must be 1-5");
  }
  write_manifest(dir, config, "figure " + std::to_string(figure), files);
  files.push_back("manifest.json");
  return files;
}

} // namespace dlq::cli
