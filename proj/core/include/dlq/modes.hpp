#pragma once

#include "dlq/quadrature.hpp"
#include "dlq/spectrum.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace dlq {

using cdouble = std::complex<double>;

/// Two-component Dirac spinor (phi, chi) in the Dirac representation.
struct SpinorValue {
  cdouble upper{0.0};
  cdouble lower{0.0};

  SpinorValue &operator+=(const SpinorValue &o) {
    upper += o.upper;
    lower += o.lower;
    return *this;
  }
  SpinorValue &operator-=(const SpinorValue &o) {
    upper -= o.upper;
    lower -= o.lower;
    return *this;
  }
  friend SpinorValue operator+(SpinorValue a, const SpinorValue &b) { return a += b; }
  friend SpinorValue operator-(SpinorValue a, const SpinorValue &b) { return a -= b; }
  friend SpinorValue operator*(cdouble s, const SpinorValue &a) {
    return {s * a.upper, s * a.lower};
  }

  /// psi^dagger psi
  double density() const { return std::norm(upper) + std::norm(lower); }
  bool finite() const;
};

/// a^dagger b
inline cdouble dagger_product(const SpinorValue &a, const SpinorValue &b) {
  return std::conj(a.upper) * b.upper + std::conj(a.lower) * b.lower;
}

/// Probability current j^1 = psi^dagger gamma^0 gamma^1 psi.
double current_density(const SpinorValue &psi);

/// Residual of the bag condition (1 + i n-slash) psi = 0 at a wall with
/// outward normal `outward_normal` (-1 at a left wall, +1 at a right wall).
double bag_condition_residual(const SpinorValue &psi, int outward_normal);

enum class SpinorKind { u, v };
enum class ModeFamily { global, local_left, local_right };
enum class FrequencySign { plus, minus };

struct ModeSpec {
  ModeFamily family = ModeFamily::global;
  std::size_t index = 1;
  FrequencySign sign = FrequencySign::plus;
};

/// Free plane-wave spinors u(p), v(p), normalized to u^dagger u = 1.
SpinorValue free_spinor(SpinorKind kind, double p, double mass);

/// Normalized bag eigenmode of the interval [origin, origin + length]:
///   sign plus:  c e^{-i w t} (e^{i th} u(p) - e^{-i th} u(-p))
///   sign minus: c e^{+i w t} (e^{-i th} v(p) - e^{i th} v(-p))
/// with th = p (x - origin) + delta and c = sqrt(w^2 / (2 L (w^2 + m/L))).
class BagMode {
public:
  BagMode(FrequencySign sign, double wavenumber, double mass, double length,
          double origin = 0.0);

  /// Unrestricted analytic expression (no support cut).
  SpinorValue value(double x, double t = 0.0) const;

  /// Support: [0, L] when origin == 0, otherwise (origin, origin + L].
  bool in_support(double x) const;

  /// value(x, 0) restricted to the support (Heaviside cut, Theta(0) = 1 on
  /// the left region's right endpoint).
  SpinorValue initial(double x) const {
    return in_support(x) ? value(x, 0.0) : SpinorValue{};
  }

  FrequencySign sign() const { return sign_; }
  double wavenumber() const { return p_; }
  double frequency() const { return omega_; }
  double phase() const { return delta_; }
  double normalization() const { return norm_; }
  double origin() const { return origin_; }
  double length() const { return length_; }

private:
  FrequencySign sign_;
  double p_, mass_, length_, origin_;
  double omega_, delta_, norm_;
  SpinorValue s_plus_;  // u(p) or v(p)
  SpinorValue s_minus_; // u(-p) or v(-p)
};

/// Global stationary mode Psi^(+/-)_I(x, t). Requires spec.family == global
/// and 0 <= x <= 1.
SpinorValue stationary_mode(const ModeSpec &spec, double x, double t,
                            const WavenumberTable &table);

/// BagMode for any family. Local families use a table of the matching
/// length (r for left, 1 - r for right); global uses the length-1 table.
BagMode make_mode(const ModeSpec &spec, const WavenumberTable &table,
                  double split_fraction);

/// t = 0 value of a localized mode. Wavenumbers are solved on demand from
/// the config (length r on the left, 1 - r on the right).
SpinorValue local_mode_initial(const ModeSpec &spec, double x,
                               const FieldConfig &config);

using SpinorFunction = std::function<SpinorValue(double)>;

/// (f | g) = int_a^b f^dagger g dx by adaptive composite Gauss-Legendre,
/// splitting at every break (e.g. x = r where local modes jump).
cdouble inner_product_quadrature(const SpinorFunction &f,
                                 const SpinorFunction &g, double a, double b,
                                 std::span<const double> panel_breaks,
                                 const QuadratureOptions &opts = {});

/// Panel count that keeps roughly four oscillations per 32-point panel for
/// an integrand with total wavenumber `k` over an interval of `width`.
int panels_for_wavenumber(double k, double width);

} // namespace dlq
