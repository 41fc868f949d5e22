#include "dlq/evolution.hpp"

#include "dlq/errors.hpp"
#include "dlq/summation.hpp"

#include <algorithm>
#include <cmath>

namespace dlq {

namespace {

struct Term {
  cdouble coefficient;
  BagMode mode;
};

/// Weighted sum of modes; `cut` applies the support restriction (t = 0 data
/// of local modes).
class ModeSum {
public:
  void add(cdouble c, BagMode mode) { terms_.push_back({c, std::move(mode)}); }

  SpinorValue value(double x, double t) const {
    SpinorValue acc;
    for (const auto &term : terms_)
      acc += term.coefficient * term.mode.value(x, t);
    return acc;
  }
  SpinorValue initial(double x) const {
    SpinorValue acc;
    for (const auto &term : terms_)
      if (term.mode.in_support(x))
        acc += term.coefficient * term.mode.value(x, 0.0);
    return acc;
  }
  double max_wavenumber() const {
    double k = 0.0;
    for (const auto &term : terms_)
      k = std::max(k, std::abs(term.mode.wavenumber()));
    return k;
  }

private:
  std::vector<Term> terms_;
};

Region region_of(const ModeSpec &spec) {
  if (spec.family == ModeFamily::global)
    throw DomainError("expected a local mode spec");
  return spec.family == ModeFamily::local_left ? Region::left : Region::right;
}

void check_local(const ModeSpec &spec, const BogoliubovSet &set) {
  region_of(spec);
  if (spec.index < 1 || spec.index > set.config.n_local)
    throw DomainError("local mode index outside 1..n_local");
}

ModeSum local_in_global(const ModeSpec &spec, const BogoliubovSet &set) {
  check_local(spec, set);
  const Region region = region_of(spec);
  const auto &alpha = set.alpha_of(region);
  const auto &beta = set.beta_of(region);
  const auto &table = set.tables.global;
  const double m = set.config.mass_times_R;
  const std::size_t i = spec.index;
  ModeSum sum;
  for (std::size_t I = 1; I <= set.config.n_global; ++I) {
    const double P = table.root(I);
    BagMode plus(FrequencySign::plus, P, m, 1.0);
    BagMode minus(FrequencySign::minus, P, m, 1.0);
    if (spec.sign == FrequencySign::plus) {
      sum.add(alpha(i, I), plus);
      sum.add(-beta(i, I), minus);
    } else {
      sum.add(beta(i, I), plus);
      sum.add(alpha(i, I), minus);
    }
  }
  return sum;
}

ModeSum global_in_local(std::size_t I, FrequencySign sign, std::size_t terms,
                        const BogoliubovSet &set) {
  if (I < 1 || I > set.config.n_global)
    throw DomainError("global mode index outside 1..n_global");
  if (terms > set.config.n_local)
    throw DomainError("term count exceeds n_local");
  const double m = set.config.mass_times_R;
  const double r = set.config.split_fraction;
  ModeSum sum;
  for (Region region : {Region::left, Region::right}) {
    const auto &alpha = set.alpha_of(region);
    const auto &beta = set.beta_of(region);
    const auto &table = region == Region::left ? set.tables.left : set.tables.right;
    const double origin = region == Region::left ? 0.0 : r;
    for (std::size_t i = 1; i <= terms; ++i) {
      const double p = table.root(i);
      BagMode plus(FrequencySign::plus, p, m, table.length(), origin);
      BagMode minus(FrequencySign::minus, p, m, table.length(), origin);
      const cdouble a = std::conj(alpha(i, I));
      const cdouble b = std::conj(beta(i, I));
      if (sign == FrequencySign::plus) {
        sum.add(a, plus);
        sum.add(b, minus);
      } else {
        sum.add(-b, plus);
        sum.add(a, minus);
      }
    }
  }
  return sum;
}

QuadratureOptions options_for(const BogoliubovSet &set, double k, double width) {
  QuadratureOptions opts;
  opts.tol = set.config.quad_tol;
  opts.initial_panels = panels_for_wavenumber(k, width);
  return opts;
}

double integrate_density(const ModeSum &sum, double t, double a, double b,
                         const BogoliubovSet &set) {
  const double breaks[] = {set.config.split_fraction};
  auto density = [&](double x) { return sum.value(x, t).density(); };
  const auto opts = options_for(set, 2.0 * sum.max_wavenumber(), b - a);
  return integrate(density, a, b, breaks, opts).value.real();
}

} // namespace

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2)
    throw DomainError("a grid needs at least two points");
  std::vector<double> grid(points);
  const double step = 1.0 / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k)
    grid[k] = static_cast<double>(k) * step;
  grid.back() = 1.0;
  return grid;
}

std::vector<SpinorValue> evolve_local_mode(const ModeSpec &spec, double t,
                                           std::span<const double> grid,
                                           const BogoliubovSet &set) {
  if (!(t >= 0.0))
    throw DomainError("evolution time must be non-negative");
  const auto sum = local_in_global(spec, set);
  std::vector<SpinorValue> out;
  out.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0))
      throw DomainError("grid points must lie in [0, 1]");
    out.push_back(sum.value(x, t));
  }
  return out;
}

DensityProfile density_profile(const ModeSpec &spec,
                               std::span<const double> times,
                               std::span<const double> grid,
                               const BogoliubovSet &set) {
  DensityProfile profile;
  profile.times.assign(times.begin(), times.end());
  profile.grid.assign(grid.begin(), grid.end());
  profile.truncation = set.config.n_global;
  profile.density.reserve(times.size() * grid.size());
  for (double t : times)
    for (const auto &psi : evolve_local_mode(spec, t, grid, set))
      profile.density.push_back(psi.density());
  return profile;
}

double density_front(std::span<const double> density,
                     std::span<const double> grid, ModeFamily family,
                     double fraction) {
  if (density.size() != grid.size() || grid.empty())
    throw DomainError("density and grid differ in length");
  const double peak = *std::max_element(density.begin(), density.end());
  const double level = fraction * peak;
  if (family == ModeFamily::local_right) {
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (density[k] >= level)
        return grid[k];
  } else {
    for (std::size_t k = grid.size(); k-- > 0;)
      if (density[k] >= level)
        return grid[k];
  }
  return grid.front();
}

double parseval_residual(const ModeSpec &spec, const BogoliubovSet &set) {
  check_local(spec, set);
  const Region region = region_of(spec);
  std::vector<double> terms;
  terms.reserve(2 * set.config.n_global);
  for (const auto &c : set.alpha_of(region).row(spec.index))
    terms.push_back(std::norm(c));
  for (const auto &c : set.beta_of(region).row(spec.index))
    terms.push_back(std::norm(c));
  return 1.0 - ordered_sum(terms);
}

double causality_leakage(const ModeSpec &spec, double t,
                         const BogoliubovSet &set, double margin) {
  if (!(t >= 0.0) || !(margin >= 0.0))
    throw DomainError("time and margin must be non-negative");
  const double r = set.config.split_fraction;
  double a = 0.0, b = 1.0;
  if (region_of(spec) == Region::left) {
    a = r + t + margin;
    if (!(a < 1.0))
      throw DomainError("light cone reaches the cavity wall");
  } else {
    b = r - t - margin;
    if (!(b > 0.0))
      throw DomainError("light cone reaches the cavity wall");
  }
  const auto sum = local_in_global(spec, set);
  return integrate_density(sum, t, a, b, set);
}

double evolved_norm(const ModeSpec &spec, double t, const BogoliubovSet &set) {
  if (!(t >= 0.0))
    throw DomainError("evolution time must be non-negative");
  const auto sum = local_in_global(spec, set);
  return integrate_density(sum, t, 0.0, 1.0, set);
}

double reconstruction_error(const ModeSpec &spec, const BogoliubovSet &set) {
  const auto sum = local_in_global(spec, set);
  const Region region = region_of(spec);
  const auto &table = region == Region::left ? set.tables.left : set.tables.right;
  const BagMode target = make_mode(spec, table, set.config.split_fraction);
  auto err = [&](double x) {
    return (sum.value(x, 0.0) - target.initial(x)).density();
  };
  const double breaks[] = {set.config.split_fraction};
  const auto opts = options_for(set, 2.0 * sum.max_wavenumber(), 1.0);
  return std::sqrt(integrate(err, 0.0, 1.0, breaks, opts).value.real());
}

std::vector<SpinorValue> reconstruct_global_mode(std::size_t I,
                                                 FrequencySign sign,
                                                 std::size_t terms,
                                                 std::span<const double> grid,
                                                 const BogoliubovSet &set) {
  const auto sum = global_in_local(I, sign, terms, set);
  std::vector<SpinorValue> out;
  out.reserve(grid.size());
  for (double x : grid)
    out.push_back(sum.initial(x));
  return out;
}

std::vector<ReconstructionPoint>
expand_global_in_local(std::size_t I, FrequencySign sign,
                       std::span<const std::size_t> counts,
                       const BogoliubovSet &set) {
  if (I < 1 || I > set.config.n_global)
    throw DomainError("global mode index outside 1..n_global");
  const BagMode target(sign, set.tables.global.root(I), set.config.mass_times_R, 1.0);
  const double breaks[] = {set.config.split_fraction};
  std::vector<ReconstructionPoint> out;
  for (std::size_t n : counts) {
    const auto sum = global_in_local(I, sign, n, set);
    auto err = [&](double x) { return (target.value(x, 0.0) - sum.initial(x)).density(); };
    const double k = std::max(sum.max_wavenumber(), target.wavenumber());
    const auto opts = options_for(set, 2.0 * k, set.config.split_fraction);
    ReconstructionPoint point;
    point.terms = n;
    point.l2_error_squared = integrate(err, 0.0, 1.0, breaks, opts).value.real();
    std::vector<double> weights;
    for (Region region : {Region::left, Region::right})
      for (std::size_t i = 1; i <= n; ++i) {
        weights.push_back(std::norm(set.alpha_of(region)(i, I)));
        weights.push_back(std::norm(set.beta_of(region)(i, I)));
      }
    point.parseval_residual = 1.0 - ordered_sum(weights);
    out.push_back(point);
  }
  return out;
}

} // namespace dlq
