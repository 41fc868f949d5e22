#include "dlq/observables.hpp"

#include "dlq/errors.hpp"
#include "dlq/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dlq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool successive_doublings(const std::vector<std::pair<std::size_t, double>> &p) {
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k].first != 2 * p[k - 1].first)
      return false;
  return p.size() >= 2;
}

double row_sum_norm(const CoefficientMatrix &m, std::size_t row) {
  std::vector<double> terms;
  terms.reserve(m.cols());
  for (const auto &c : m.row(row))
    terms.push_back(std::norm(c));
  return ordered_sum(terms);
}

void check_local_index(const BogoliubovSet &set, std::size_t i) {
  if (i < 1 || i > set.config.n_local)
    throw DomainError("local index " + std::to_string(i) + " outside 1.." +
                      std::to_string(set.config.n_local));
}

} // namespace

std::vector<double> SeriesReport::increments() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < partial_sums.size(); ++k)
    out.push_back(partial_sums[k].second - partial_sums[k - 1].second);
  return out;
}

SeriesReport classify_series(std::vector<std::pair<std::size_t, double>> partials,
                             double noise_per_term, double shrink) {
  SeriesReport report;
  report.partial_sums = std::move(partials);
  const auto &p = report.partial_sums;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k].first <= p[k - 1].first)
      throw DomainError("series cutoffs must be strictly increasing");
  for (const auto &[n, v] : p)
    if (!std::isfinite(v))
      throw DomainError("series partial sum is not finite");
  if (!successive_doublings(p)) {
    report.growth_model = "unclassified: cutoffs are not successive doublings";
    return report;
  }

  const auto inc = report.increments();
  const double noise =
      static_cast<double>(p.back().first) *
      (kEps * std::abs(p.back().second) + noise_per_term);

  if (inc.size() >= 3) {
    const auto last3 = std::span(inc).last(3);
    const double lo = *std::min_element(last3.begin(), last3.end());
    const double hi = *std::max_element(last3.begin(), last3.end());
    if (lo > 10.0 * noise && hi <= 1.2 * lo) {
      report.diverges = true;
      const double mean = (last3[0] + last3[1] + last3[2]) / 3.0;
      std::ostringstream note;
      note.precision(6);
      note << "logarithmic: S(N) ~ a + c ln N, c = " << mean / std::numbers::ln2;
      report.growth_model = note.str();
      return report;
    }
  }

  bool shrinking = true;
  for (std::size_t k = 1; k < inc.size(); ++k)
    if (std::abs(inc[k]) > shrink * std::abs(inc[k - 1]))
      shrinking = false;
  if (shrinking && inc.size() >= 2) {
    report.converges = true;
    const double ratio = inc.back() / inc[inc.size() - 2];
    report.extrapolated_value =
        p.back().second + inc.back() * ratio / (1.0 - ratio);
    std::ostringstream note;
    note.precision(6);
    note << "convergent: Cauchy tail ratio per doubling " << ratio;
    report.growth_model = note.str();
  } else {
    report.growth_model = "unclassified";
  }
  return report;
}

double CorrelationGrid::max_abs() const {
  double m = 0.0;
  for (double v : values)
    m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> local_occupation(const BogoliubovSet &set, Region region) {
  const auto &beta = set.beta_of(region);
  std::vector<double> out;
  out.reserve(beta.rows());
  for (std::size_t i = 1; i <= beta.rows(); ++i)
    out.push_back(row_sum_norm(beta, i));
  return out;
}

std::vector<double> local_antiparticle_occupation(const BogoliubovSet &set,
                                                  Region region) {
  // CPT: the antiparticle sum is the same sum over |beta|^2
  return local_occupation(set, region);
}

StreamedOccupation streamed_local_occupation(const FieldConfig &config,
                                             Region region) {
  config.validate();
  const double m = config.mass_times_R, r = config.split_fraction;
  const std::size_t nl = config.n_local, ng = config.n_global;
  const auto local = solve_spectrum(
      m, region == Region::left ? config.left_length() : config.right_length(), nl,
      config.root_tol);
  std::vector<CompensatedSum<double>> sums(nl);
  StreamedOccupation out;
  out.n_global = ng;
  out.tail_estimate.assign(nl, 0.0);
  for (std::size_t I = 1; I <= ng; ++I) {
    const double P = static_cast<double>(solve_root(m, 1.0, I, config.root_tol));
    for (std::size_t i = 1; i <= nl; ++i) {
      const double p = local.root(i);
      const cdouble b = region == Region::left ? beta_left_closed_form(p, P, m, r)
                                               : beta_right_closed_form(p, P, m, r);
      sums[i - 1].add(std::norm(b));
    }
    if (I == ng / 2)
      for (std::size_t i = 0; i < nl; ++i)
        out.tail_estimate[i] = sums[i].value();
  }
  for (std::size_t i = 0; i < nl; ++i) {
    out.occupation.push_back(sums[i].value());
    out.tail_estimate[i] = out.occupation[i] - out.tail_estimate[i];
  }
  return out;
}

std::vector<double> removed_mirror_spectrum(const BogoliubovSet &set) {
  const std::size_t nl = set.config.n_local, ng = set.config.n_global;
  std::vector<double> out;
  out.reserve(ng);
  std::vector<double> terms(2 * nl);
  for (std::size_t I = 1; I <= ng; ++I) {
    for (std::size_t i = 1; i <= nl; ++i) {
      terms[2 * (i - 1)] = std::norm(set.beta(i, I));
      terms[2 * (i - 1) + 1] = std::norm(set.beta_prime(i, I));
    }
    out.push_back(ordered_sum(terms));
  }
  return out;
}

std::vector<double> completeness_diagonal(const BogoliubovSet &set, Region region) {
  const auto &a = set.alpha_of(region);
  const auto &b = set.beta_of(region);
  std::vector<double> out;
  std::vector<double> terms(2 * a.rows());
  for (std::size_t I = 1; I <= a.cols(); ++I) {
    for (std::size_t i = 1; i <= a.rows(); ++i) {
      terms[2 * (i - 1)] = std::norm(a(i, I));
      terms[2 * (i - 1) + 1] = std::norm(b(i, I));
    }
    out.push_back(ordered_sum(terms));
  }
  return out;
}

EffectiveTemperature effective_temperature(std::span<const double> occupation,
                                           std::span<const double> frequencies) {
  if (occupation.size() != frequencies.size())
    throw DomainError("occupation and frequency arrays differ in length");
  EffectiveTemperature out;
  out.temperature.reserve(occupation.size());
  out.inverted.reserve(occupation.size());
  for (std::size_t k = 0; k < occupation.size(); ++k) {
    const double n = occupation[k];
    if (!(n >= 0.0 && n < 1.0))
      throw DomainError("occupation must lie in [0, 1)");
    if (n == 0.0) {
      out.temperature.push_back(0.0);
      out.inverted.push_back(0);
      continue;
    }
    const double log_ratio = std::log1p((1.0 - 2.0 * n) / n);
    out.temperature.push_back(frequencies[k] / log_ratio);
    out.inverted.push_back(n >= 0.5 ? 1 : 0);
  }
  return out;
}

std::vector<double> quasilocal_energy_terms(const BogoliubovSet &set,
                                            std::size_t i, Region region) {
  check_local_index(set, i);
  const auto &alpha = set.alpha_of(region);
  std::vector<double> terms;
  terms.reserve(alpha.cols());
  for (std::size_t I = 1; I <= alpha.cols(); ++I)
    terms.push_back(set.tables.global.frequency(I) * std::norm(alpha(i, I)));
  return terms;
}

SeriesReport quasilocal_energy(const BogoliubovSet &set, std::size_t i,
                               std::span<const std::size_t> cutoffs,
                               Region region) {
  const auto terms = quasilocal_energy_terms(set, i, region);
  const double occupation = row_sum_norm(set.beta_of(region), i);
  std::vector<std::pair<std::size_t, double>> partials;
  for (std::size_t N : cutoffs) {
    if (N < 1 || N > terms.size())
      throw DomainError("energy cutoff beyond the global truncation");
    const double s = ordered_sum(std::span(terms).first(N));
    partials.emplace_back(N, s / (1.0 - occupation));
  }
  return classify_series(std::move(partials));
}

double block_loglog_slope(std::span<const double> terms,
                          std::span<const double> abscissa, std::size_t first,
                          std::size_t last, std::size_t blocks) {
  if (terms.size() != abscissa.size() || first < 1 || last > terms.size() + 1 ||
      first >= last || blocks < 2)
    throw DomainError("invalid block slope request");
  std::vector<double> xs, ys;
  const double lf = std::log(static_cast<double>(first));
  const double ll = std::log(static_cast<double>(last));
  std::size_t lo = first;
  for (std::size_t b = 1; b <= blocks; ++b) {
    const auto hi = b == blocks
                        ? last
                        : static_cast<std::size_t>(std::lround(
                              std::exp(lf + (ll - lf) * b / blocks)));
    if (hi <= lo)
      continue;
    double sx = 0.0, sy = 0.0;
    for (std::size_t I = lo; I < hi; ++I) {
      sx += abscissa[I - 1];
      sy += terms[I - 1];
    }
    const double count = static_cast<double>(hi - lo);
    xs.push_back(std::log(sx / count));
    ys.push_back(std::log(sy / count));
    lo = hi;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return sxy / sxx;
}

namespace {

cdouble conj_dot(std::span<const cdouble> a, std::span<const cdouble> b,
                 bool conj_a, bool conj_b) {
  std::vector<cdouble> terms(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    terms[k] = (conj_a ? std::conj(a[k]) : a[k]) * (conj_b ? std::conj(b[k]) : b[k]);
  return ordered_sum(terms);
}

struct CorrelationParts {
  cdouble numerator;
  double normalizer;
};

CorrelationParts correlation_parts(const BogoliubovSet &set,
                                   CorrelationChannel channel, std::size_t l,
                                   std::size_t k) {
  const auto al = set.alpha.row(l), bl = set.beta.row(l);
  const auto ak = set.alpha_prime.row(k), bk = set.beta_prime.row(k);
  cdouble numerator;
  if (channel == CorrelationChannel::particle_particle) {
    // sum_I a*_lI a'_kI * sum_J b_lJ b'*_kJ
    numerator = conj_dot(al, ak, true, false) * conj_dot(bl, bk, false, true);
  } else if (channel == CorrelationChannel::antiparticle_antiparticle) {
    // sum_I a_lI a'*_kI * sum_J b*_lJ b'_kJ
    numerator = conj_dot(al, ak, false, true) * conj_dot(bl, bk, true, false);
  } else {
    // sum_I a*_lI b'*_kI * sum_J b_lJ a'_kJ
    numerator = conj_dot(al, bk, true, true) * conj_dot(bl, ak, false, false);
  }
  const double left = row_sum_norm(set.alpha, l) * row_sum_norm(set.beta, l);
  const double right =
      row_sum_norm(set.alpha_prime, k) * row_sum_norm(set.beta_prime, k);
  return {numerator, std::sqrt(left) * std::sqrt(right)};
}

} // namespace

CorrelationGrid vacuum_correlation(const BogoliubovSet &set,
                                   CorrelationChannel channel, std::size_t l_max,
                                   std::size_t k_max) {
  if (l_max < 1 || k_max < 1 || l_max > set.config.n_local ||
      k_max > set.config.n_local)
    throw DomainError("correlation ranges must lie within the local truncation");
  CorrelationGrid grid;
  grid.channel = channel;
  grid.rows = l_max;
  grid.cols = k_max;
  grid.config = set.config;
  grid.values.assign(l_max * k_max, 0.0);
  grid.flagged.assign(l_max * k_max, 0);
  for (std::size_t l = 1; l <= l_max; ++l) {
    for (std::size_t k = 1; k <= k_max; ++k) {
      const auto parts = correlation_parts(set, channel, l, k);
      const std::size_t idx = (l - 1) * k_max + (k - 1);
      if (!(parts.normalizer > 0.0)) {
        grid.flagged[idx] = 1;
        continue;
      }
      grid.values[idx] = parts.numerator.real() / parts.normalizer;
      grid.max_imag_residue = std::max(
          grid.max_imag_residue, std::abs(parts.numerator.imag()) / parts.normalizer);
    }
  }
  return grid;
}

double particle_covariance(const BogoliubovSet &set, std::size_t l,
                           std::size_t k) {
  check_local_index(set, l);
  check_local_index(set, k);
  return correlation_parts(set, CorrelationChannel::particle_particle, l, k)
      .numerator.real();
}

double strict_localization_defect(const BogoliubovSet &set, std::size_t l,
                                  std::size_t k) {
  const double cov = particle_covariance(set, l, k);
  const double n_l = row_sum_norm(set.beta, l);
  return -cov / (1.0 - n_l);
}

SeriesReport hilbert_schmidt_partials(const BogoliubovSet &set,
                                      std::span<const std::size_t> cutoffs) {
  std::vector<std::pair<std::size_t, double>> partials;
  std::vector<double> terms;
  for (std::size_t N : cutoffs) {
    if (N < 1 || N > set.config.n_local || N > set.config.n_global)
      throw DomainError("Hilbert-Schmidt cutoff beyond the truncation");
    terms.clear();
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t I = 1; I <= N; ++I) {
        terms.push_back(std::norm(set.beta(i, I)));
        terms.push_back(std::norm(set.beta_prime(i, I)));
      }
    partials.emplace_back(N, ordered_sum(terms));
  }
  return classify_series(std::move(partials));
}

double diagonal_path_floor(double split_fraction,
                           std::span<const std::size_t> i_values,
                           std::size_t window) {
  if (window < 1 || i_values.empty())
    throw DomainError("diagonal floor needs a nonempty path and window >= 1");
  const double r = split_fraction;
  const double pi = std::numbers::pi;
  double worst = 1.0;
  for (std::size_t start = 0; start < i_values.size(); start += window) {
    double best = 0.0;
    const std::size_t stop = std::min(start + window, i_values.size());
    for (std::size_t k = start; k < stop; ++k) {
      const double c = std::cos((2.0 * static_cast<double>(i_values[k]) - 1.0) * pi * r / 2.0);
      best = std::max(best, c * c);
    }
    worst = std::min(worst, best);
  }
  return 0.5 * r / (pi * pi * (1.0 + r) * (1.0 + r)) * worst;
}

AbelPathReport inequivalence_diagnostic(const FieldConfig &config, AbelPath path,
                                        std::span<const std::size_t> i_values,
                                        std::size_t window) {
  config.validate();
  if (i_values.empty() || window < 1)
    throw DomainError("Abel path needs indices and window >= 1");
  AbelPathReport report;
  report.path = path;
  for (std::size_t i : i_values) {
    if (i < 1)
      throw DomainError("Abel path indices are 1-based");
    const std::size_t I = path == AbelPath::diagonal ? i : i * i;
    const double b2 = std::norm(beta_on_demand(Region::left, i, I, config));
    report.points.push_back({i, I, static_cast<double>(i) * static_cast<double>(I) * b2});
  }
  for (std::size_t start = 0; start < report.points.size(); start += window) {
    double best = 0.0;
    const std::size_t stop = std::min(start + window, report.points.size());
    for (std::size_t k = start; k < stop; ++k)
      best = std::max(best, report.points[k].value);
    report.window_maxima.push_back(best);
  }

  if (path == AbelPath::diagonal) {
    report.floor = diagonal_path_floor(config.split_fraction, i_values, window);
    const bool above = std::all_of(report.window_maxima.begin(),
                                   report.window_maxima.end(),
                                   [&](double v) { return v > report.floor; });
    report.vanishes = !above;
    report.note = above ? "non-vanishing: every window maximum exceeds the floor"
                        : "a window maximum fell below the floor";
  } else {
    bool decreasing = report.window_maxima.size() >= 2;
    for (std::size_t k = 1; k < report.window_maxima.size(); ++k)
      if (!(report.window_maxima[k] < report.window_maxima[k - 1]))
        decreasing = false;
    report.vanishes = decreasing;
    report.note = decreasing ? "vanishing: window maxima strictly decrease"
                             : "window maxima do not decrease monotonically";
  }
  return report;
}

std::vector<double> quadratic_path_dyadic_maxima(const FieldConfig &config,
                                                 std::size_t start,
                                                 std::size_t windows) {
  config.validate();
  if (start < 1)
    throw DomainError("dyadic windows start at i >= 1");
  std::vector<double> out;
  std::size_t lo = start;
  for (std::size_t w = 0; w < windows; ++w, lo *= 2) {
    double best = 0.0;
    for (std::size_t i = lo; i < 2 * lo; ++i) {
      const std::size_t I = i * i;
      const double b2 = std::norm(beta_on_demand(Region::left, i, I, config));
      best = std::max(best, static_cast<double>(i) * static_cast<double>(I) * b2);
    }
    out.push_back(best);
  }
  return out;
}

namespace {

std::vector<std::size_t> doubling_cutoffs(std::size_t n) {
  std::size_t base = std::max<std::size_t>(1, n >> 4);
  std::vector<std::size_t> out;
  for (std::size_t c = base; c <= n; c *= 2)
    out.push_back(c);
  return out;
}

SeriesReport partial_series(const std::vector<double> &terms) {
  std::vector<std::pair<std::size_t, double>> partials;
  for (std::size_t N : doubling_cutoffs(terms.size()))
    partials.emplace_back(N, ordered_sum(std::span(terms).first(N)));
  return classify_series(std::move(partials));
}

} // namespace

std::pair<SeriesReport, SeriesReport>
single_series_convergence(const BogoliubovSet &set, std::size_t i, std::size_t I) {
  check_local_index(set, i);
  if (I < 1 || I > set.config.n_global)
    throw DomainError("global index outside the truncation");
  std::vector<double> over_I, over_i;
  for (std::size_t J = 1; J <= set.config.n_global; ++J)
    over_I.push_back(std::norm(set.beta(i, J)) + std::norm(set.beta_prime(i, J)));
  for (std::size_t j = 1; j <= set.config.n_local; ++j)
    over_i.push_back(std::norm(set.beta(j, I)) + std::norm(set.beta_prime(j, I)));
  return {partial_series(over_I), partial_series(over_i)};
}

double pauli_norm(const BogoliubovSet &set, std::size_t i,
                  std::span<const std::uint8_t> particles,
                  std::span<const std::uint8_t> antiparticles) {
  check_local_index(set, i);
  const std::size_t ng = set.config.n_global;
  if (particles.size() != ng || antiparticles.size() != ng)
    throw DomainError("occupation patterns must cover the global truncation");
  std::vector<double> terms;
  terms.reserve(2 * ng);
  for (std::size_t J = 1; J <= ng; ++J) {
    if (particles[J - 1])
      terms.push_back(std::norm(set.alpha(i, J)));
    if (!antiparticles[J - 1])
      terms.push_back(std::norm(set.beta(i, J)));
  }
  return ordered_sum(terms);
}

} // namespace dlq
