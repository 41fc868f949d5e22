#pragma once

#include <cstddef>
#include <vector>

namespace dlq {

/// Physical and numerical setup. Lengths are in units of the cavity length R
/// (R == 1) and the mass enters only as the dimensionless product mR.
struct FieldConfig {
  double mass_times_R = 1.0;
  double split_fraction = 0.3; // r/R, the position of the virtual wall
  std::size_t n_local = 30;
  std::size_t n_global = 3000;
  double root_tol = 1e-12;
  double quad_tol = 1e-10;
  double degeneracy_tol = 1e-8; // relative to Omega_I

  /// Throws DomainError if any invariant is violated.
  void validate() const;

  double left_length() const { return split_fraction; }
  double right_length() const { return 1.0 - split_fraction; }

  bool operator==(const FieldConfig &) const = default;
};

/// The first N positive roots of m sin(PL) + P cos(PL) = 0 for one interval
/// length. Roots are kept in extended precision so the residual contract
/// holds for large indices; `root()` hands out the rounded double.
class WavenumberTable {
public:
  WavenumberTable() = default;
  WavenumberTable(double length, double mass, std::vector<long double> roots)
      : length_(length), mass_(mass), roots_(std::move(roots)) {}

  double length() const { return length_; }
  double mass() const { return mass_; }
  std::size_t size() const { return roots_.size(); }
  bool empty() const { return roots_.empty(); }

  /// 1-based index, as in the physics labels.
  double root(std::size_t index) const;
  long double root_extended(std::size_t index) const;
  std::vector<double> roots() const;

  double frequency(std::size_t index) const;
  double phase(std::size_t index) const;

  /// |m sin(PL) + P cos(PL)| evaluated in extended precision.
  long double residual(std::size_t index) const;

private:
  double length_ = 1.0;
  double mass_ = 0.0;
  std::vector<long double> roots_;
};

/// Pole-free spectrum function m sin(PL) + P cos(PL).
long double spectrum_function(long double p, double mass, double length);

/// First `count` roots. Each root I is bracketed in ((I-1/2)pi/L, I pi/L)
/// and bisected to |residual| < tol (at most 200 halvings). When the bracket
/// shrinks to adjacent extended-precision values first, the root is accepted
/// if the residual is within 8 eps P (1 + P L), the rounding floor at high
/// index. mass == 0 returns the closed form (I-1/2)pi/L.
WavenumberTable solve_spectrum(double mass, double length, std::size_t count,
                               double tol = 1e-12);

/// Single root of index `index` (1-based), for on-demand coefficients far
/// beyond a table's truncation.
long double solve_root(double mass, double length, std::size_t index,
                       double tol = 1e-12);

/// omega = sqrt(p^2 + m^2)
double dispersion(double p, double mass);

/// arctan(p / (omega + m)), in (-pi/2, pi/2). Undefined at p = m = 0.
double phase_delta(double p, double mass);

} // namespace dlq
