#include "dlq/spectrum.hpp"

#include "dlq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dlq {

namespace {

constexpr int kMaxBisections = 200;
constexpr long double kPiL = std::numbers::pi_v<long double>;

void check_positive(double value, const char *name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError(std::string(name) + " must be a finite positive number");
}

} // namespace

void FieldConfig::validate() const {
  if (!(mass_times_R >= 0.0) || !std::isfinite(mass_times_R))
    throw DomainError("mass_times_R must be finite and >= 0");
  if (!(split_fraction > 0.0 && split_fraction < 1.0))
    throw DomainError("split_fraction must lie in (0, 1)");
  if (n_local < 1 || n_global < 1)
    throw DomainError("truncations n_local and n_global must be >= 1");
  check_positive(root_tol, "root_tol");
  check_positive(quad_tol, "quad_tol");
  check_positive(degeneracy_tol, "degeneracy_tol");
}

long double WavenumberTable::root_extended(std::size_t index) const {
  if (index < 1 || index > roots_.size())
    throw DomainError("wavenumber index " + std::to_string(index) +
                      " outside table of size " +
                      std::to_string(roots_.size()));
  return roots_[index - 1];
}

double WavenumberTable::root(std::size_t index) const {
  return static_cast<double>(root_extended(index));
}

std::vector<double> WavenumberTable::roots() const {
  return {roots_.begin(), roots_.end()};
}

double WavenumberTable::frequency(std::size_t index) const {
  return dispersion(root(index), mass_);
}

double WavenumberTable::phase(std::size_t index) const {
  return phase_delta(root(index), mass_);
}

long double WavenumberTable::residual(std::size_t index) const {
  return std::abs(spectrum_function(root_extended(index), mass_, length_));
}

long double spectrum_function(long double p, double mass, double length) {
  const long double arg = p * static_cast<long double>(length);
  return static_cast<long double>(mass) * std::sin(arg) + p * std::cos(arg);
}

long double solve_root(double mass, double length, std::size_t index,
                       double tol) {
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw DomainError("mass must be finite and >= 0");
  check_positive(length, "length");
  check_positive(tol, "tol");
  if (index < 1)
    throw DomainError("root index is 1-based");

  const long double L = length;
  const long double n = static_cast<long double>(index);
  long double lo = (n - 0.5L) * kPiL / L;
  long double hi = n * kPiL / L;
  if (mass == 0.0)
    return lo;

  long double f_lo = spectrum_function(lo, mass, length);
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    const long double f_mid = spectrum_function(mid, mass, length);
    if (std::abs(f_mid) < tol)
      return mid;
    if (mid == lo || mid == hi) {
      // Bracket exhausted: the residual floor is |f'| ulp(P) ~ eps P^2 L,
      // which exceeds tol for very high indices.
      const long double floor = 8.0L * std::numeric_limits<long double>::epsilon() *
                                (1.0L + mid * L) * std::max<long double>(mid, mass);
      if (std::abs(f_mid) <= floor)
        return mid;
      break;
    }
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "spectrum root " << index << " did not reach residual " << tol
      << " in bracket (" << static_cast<double>((n - 0.5L) * kPiL / L) << ", "
      << static_cast<double>(n * kPiL / L) << ")";
  throw SolverError(msg.str(), static_cast<double>((n - 0.5L) * kPiL / L),
                    static_cast<double>(n * kPiL / L));
}

WavenumberTable solve_spectrum(double mass, double length, std::size_t count,
                               double tol) {
  if (count < 1)
    throw DomainError("count must be >= 1");
  std::vector<long double> roots;
  roots.reserve(count);
  for (std::size_t i = 1; i <= count; ++i)
    roots.push_back(solve_root(mass, length, i, tol));
  return WavenumberTable(length, mass, std::move(roots));
}

double dispersion(double p, double mass) { return std::hypot(p, mass); }

double phase_delta(double p, double mass) {
  if (p == 0.0 && mass == 0.0)
    throw DomainError("phase_delta is undefined at p = m = 0");
  return std::atan(p / (dispersion(p, mass) + mass));
}

} // namespace dlq
