#include "dlq/bogoliubov.hpp"

#include "dlq/errors.hpp"
#include "dlq/summation.hpp"

#include <algorithm>
#include <cmath>

namespace dlq {

namespace {

struct Trig {
  double sin_Pr, cos_Pr, sin_pr, cos_pr;
};

double left_prefactor(double omega, double Omega, double mass, double r) {
  return std::sqrt(1.0 / (r * (omega * omega + mass / r) *
                          (Omega * Omega + mass)));
}

struct RightTerms {
  double C, X, sin_P, cos_P, sin_ps;
};

RightTerms right_terms(double p, double P, double omega, double Omega,
                       double mass, double r) {
  const double s = 1.0 - r;
  RightTerms t;
  t.C = std::sqrt(1.0 / (s * (omega * omega + mass / s) *
                         (Omega * Omega + mass)));
  t.sin_P = std::sin(P);
  t.cos_P = std::cos(P);
  t.sin_ps = std::sin(p * s);
  t.X = t.sin_P * std::cos(p * s) - std::sin(P * r);
  return t;
}

void check_indices(std::size_t i, std::size_t I, const FieldConfig &config) {
  if (i < 1 || i > config.n_local)
    throw DomainError("local index " + std::to_string(i) + " outside 1.." +
                      std::to_string(config.n_local));
  if (I < 1 || I > config.n_global)
    throw DomainError("global index " + std::to_string(I) + " outside 1.." +
                      std::to_string(config.n_global));
}

const WavenumberTable &local_table(Region region, const SpectrumTables &t) {
  return region == Region::left ? t.left : t.right;
}

} // namespace

SpectrumTables SpectrumTables::build(const FieldConfig &config) {
  config.validate();
  const double m = config.mass_times_R;
  return {solve_spectrum(m, config.left_length(), config.n_local, config.root_tol),
          solve_spectrum(m, config.right_length(), config.n_local, config.root_tol),
          solve_spectrum(m, 1.0, config.n_global, config.root_tol)};
}

double alpha_left_closed_form(double p, double P, double mass, double r) {
  const double omega = dispersion(p, mass), Omega = dispersion(P, mass);
  const Trig g{std::sin(P * r), std::cos(P * r), std::sin(p * r), std::cos(p * r)};
  const double C = left_prefactor(omega, Omega, mass, r);
  return C * ((p * Omega * g.sin_Pr * g.cos_pr - P * omega * g.cos_Pr * g.sin_pr) /
                  (Omega - omega) +
              mass * g.sin_Pr * g.sin_pr);
}

cdouble beta_left_closed_form(double p, double P, double mass, double r) {
  const double omega = dispersion(p, mass), Omega = dispersion(P, mass);
  const Trig g{std::sin(P * r), std::cos(P * r), std::sin(p * r), std::cos(p * r)};
  const double C = left_prefactor(omega, Omega, mass, r);
  const double bracket =
      (p * Omega * g.sin_Pr * g.cos_pr + P * omega * g.cos_Pr * g.sin_pr) /
          (Omega + omega) +
      mass * g.sin_Pr * g.sin_pr;
  return {0.0, -C * bracket};
}

double alpha_right_closed_form(double p, double P, double mass, double r) {
  const double omega = dispersion(p, mass), Omega = dispersion(P, mass);
  const auto t = right_terms(p, P, omega, Omega, mass, r);
  return t.C * ((p * Omega * t.X - P * omega * t.cos_P * t.sin_ps) /
                    (Omega - omega) +
                mass * t.sin_P * t.sin_ps);
}

cdouble beta_right_closed_form(double p, double P, double mass, double r) {
  const double omega = dispersion(p, mass), Omega = dispersion(P, mass);
  const auto t = right_terms(p, P, omega, Omega, mass, r);
  const double bracket =
      (p * Omega * t.X + P * omega * t.cos_P * t.sin_ps) / (Omega + omega) +
      mass * t.sin_P * t.sin_ps;
  return {0.0, -t.C * bracket};
}

bool is_degenerate(Region region, std::size_t i, std::size_t I,
                   const FieldConfig &config, const SpectrumTables &tables) {
  const double omega = local_table(region, tables).frequency(i);
  const double Omega = tables.global.frequency(I);
  return std::abs(Omega - omega) < config.degeneracy_tol * Omega;
}

cdouble coefficient_closed_form(Region region, CoefficientKind kind,
                                std::size_t i, std::size_t I,
                                const FieldConfig &config,
                                const SpectrumTables &tables) {
  check_indices(i, I, config);
  const double p = local_table(region, tables).root(i);
  const double P = tables.global.root(I);
  const double m = config.mass_times_R, r = config.split_fraction;
  if (region == Region::left)
    return kind == CoefficientKind::alpha ? cdouble(alpha_left_closed_form(p, P, m, r))
                                          : beta_left_closed_form(p, P, m, r);
  return kind == CoefficientKind::alpha ? cdouble(alpha_right_closed_form(p, P, m, r))
                                        : beta_right_closed_form(p, P, m, r);
}

cdouble coefficient_quadrature(Region region, CoefficientKind kind,
                               std::size_t i, std::size_t I,
                               const FieldConfig &config,
                               const SpectrumTables &tables) {
  check_indices(i, I, config);
  const double r = config.split_fraction;
  const auto family =
      region == Region::left ? ModeFamily::local_left : ModeFamily::local_right;
  const BagMode local =
      make_mode({family, i, FrequencySign::plus}, local_table(region, tables), r);
  const auto global_sign =
      kind == CoefficientKind::alpha ? FrequencySign::plus : FrequencySign::minus;
  const BagMode global =
      make_mode({ModeFamily::global, I, global_sign}, tables.global, r);

  const double a = region == Region::left ? 0.0 : r;
  const double b = region == Region::left ? r : 1.0;
  QuadratureOptions opts;
  opts.tol = config.quad_tol;
  opts.initial_panels =
      panels_for_wavenumber(local.wavenumber() + global.wavenumber(), b - a);
  auto integrand = [&](double x) {
    return dagger_product(global.value(x), local.value(x));
  };
  const cdouble overlap = integrate(integrand, a, b, {}, opts).value;
  return kind == CoefficientKind::alpha ? overlap : -overlap;
}

cdouble coefficient(Region region, CoefficientKind kind, std::size_t i,
                    std::size_t I, const FieldConfig &config,
                    const SpectrumTables &tables) {
  if (is_degenerate(region, i, I, config, tables))
    return coefficient_quadrature(region, kind, i, I, config, tables);
  return coefficient_closed_form(region, kind, i, I, config, tables);
}

cdouble beta_on_demand(Region region, std::size_t i, std::size_t I,
                       const FieldConfig &config) {
  config.validate();
  const double m = config.mass_times_R, r = config.split_fraction;
  const double length = region == Region::left ? r : 1.0 - r;
  const double p = static_cast<double>(solve_root(m, length, i, config.root_tol));
  const double P = static_cast<double>(solve_root(m, 1.0, I, config.root_tol));
  return region == Region::left ? beta_left_closed_form(p, P, m, r)
                                : beta_right_closed_form(p, P, m, r);
}

bool BogoliubovSet::used_fallback(Region region, std::size_t i,
                                  std::size_t I) const {
  const auto &flags = region == Region::left ? fallback_left : fallback_right;
  return flags.at((i - 1) * config.n_global + (I - 1)) != 0;
}

std::size_t BogoliubovSet::fallback_count() const {
  return static_cast<std::size_t>(
      std::count(fallback_left.begin(), fallback_left.end(), 1) +
      std::count(fallback_right.begin(), fallback_right.end(), 1));
}

BogoliubovSet build_matrices(const FieldConfig &config) {
  config.validate();
  BogoliubovSet set;
  set.config = config;
  set.tables = SpectrumTables::build(config);
  const std::size_t nl = config.n_local, ng = config.n_global;
  set.alpha = set.beta = set.alpha_prime = set.beta_prime = CoefficientMatrix(nl, ng);
  set.fallback_left.assign(nl * ng, 0);
  set.fallback_right.assign(nl * ng, 0);

  for (Region region : {Region::left, Region::right}) {
    auto &alpha = region == Region::left ? set.alpha : set.alpha_prime;
    auto &beta = region == Region::left ? set.beta : set.beta_prime;
    auto &flags = region == Region::left ? set.fallback_left : set.fallback_right;
    for (std::size_t i = 1; i <= nl; ++i) {
      for (std::size_t I = 1; I <= ng; ++I) {
        const bool degenerate = is_degenerate(region, i, I, config, set.tables);
        auto eval = degenerate ? coefficient_quadrature : coefficient_closed_form;
        alpha(i, I) = eval(region, CoefficientKind::alpha, i, I, config, set.tables);
        beta(i, I) = eval(region, CoefficientKind::beta, i, I, config, set.tables);
        flags[(i - 1) * ng + (I - 1)] = degenerate ? 1 : 0;
      }
    }
  }
  return set;
}

namespace {

// sum_I (a_iI conj(a_jI) + b_iI conj(b_jI)) or the cross variant
double row_condition(const CoefficientMatrix &a, const CoefficientMatrix &b,
                     std::size_t i, std::size_t j, bool cross) {
  const std::size_t ng = a.cols();
  std::vector<cdouble> terms;
  terms.reserve(2 * ng);
  for (std::size_t I = 1; I <= ng; ++I) {
    if (cross) {
      terms.push_back(a(i, I) * b(j, I));
      terms.push_back(b(i, I) * a(j, I));
    } else {
      terms.push_back(a(i, I) * std::conj(a(j, I)));
      terms.push_back(b(i, I) * std::conj(b(j, I)));
    }
  }
  const cdouble sum = ordered_sum(terms);
  const double target = (!cross && i == j) ? 1.0 : 0.0;
  return std::abs(sum - target);
}

} // namespace

ConditionReport check_conditions(const BogoliubovSet &set,
                                 std::size_t index_range) {
  const std::size_t nl = set.config.n_local, ng = set.config.n_global;
  if (index_range < 1 || index_range > std::min(nl, ng))
    throw DomainError("index_range must lie within both truncations");
  ConditionReport report;
  report.n_local = nl;
  report.n_global = ng;
  report.index_range = index_range;

  for (Region region : {Region::left, Region::right}) {
    const auto &a = set.alpha_of(region);
    const auto &b = set.beta_of(region);
    for (std::size_t i = 1; i <= index_range; ++i) {
      for (std::size_t j = 1; j <= index_range; ++j) {
        report.cond1_max_err =
            std::max(report.cond1_max_err, row_condition(a, b, i, j, false));
        report.cond2_max_err =
            std::max(report.cond2_max_err, row_condition(a, b, i, j, true));
      }
    }
  }

  std::vector<cdouble> terms;
  terms.reserve(4 * nl);
  for (std::size_t I = 1; I <= index_range; ++I) {
    for (std::size_t J = 1; J <= index_range; ++J) {
      terms.clear();
      for (std::size_t i = 1; i <= nl; ++i) {
        terms.push_back(set.alpha(i, I) * std::conj(set.alpha(i, J)));
        terms.push_back(set.beta(i, I) * std::conj(set.beta(i, J)));
        terms.push_back(set.alpha_prime(i, I) * std::conj(set.alpha_prime(i, J)));
        terms.push_back(set.beta_prime(i, I) * std::conj(set.beta_prime(i, J)));
      }
      const double target = I == J ? 1.0 : 0.0;
      report.cond3_combined_max_err =
          std::max(report.cond3_combined_max_err, std::abs(ordered_sum(terms) - target));

      terms.clear();
      for (std::size_t i = 1; i <= nl; ++i) {
        terms.push_back(set.alpha(i, I) * set.beta(i, J));
        terms.push_back(set.beta(i, I) * set.alpha(i, J));
        terms.push_back(set.alpha_prime(i, I) * set.beta_prime(i, J));
        terms.push_back(set.beta_prime(i, I) * set.alpha_prime(i, J));
      }
      report.cond4_max_err = std::max(report.cond4_max_err, std::abs(ordered_sum(terms)));
    }
    std::vector<double> diag;
    diag.reserve(2 * nl);
    for (std::size_t i = 1; i <= nl; ++i) {
      diag.push_back(std::norm(set.alpha(i, I)));
      diag.push_back(std::norm(set.beta(i, I)));
    }
    report.unprimed_diagonal_max =
        std::max(report.unprimed_diagonal_max, ordered_sum(diag));
  }
  return report;
}

} // namespace dlq
