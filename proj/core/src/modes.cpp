#include "dlq/modes.hpp"

#include "dlq/errors.hpp"

#include <cmath>
#include <numbers>

namespace dlq {

namespace {

const cdouble I_unit{0.0, 1.0};

} // namespace

bool SpinorValue::finite() const {
  return std::isfinite(upper.real()) && std::isfinite(upper.imag()) &&
         std::isfinite(lower.real()) && std::isfinite(lower.imag());
}

double current_density(const SpinorValue &psi) {
  // gamma^0 gamma^1 = sigma_x in this representation
  return 2.0 * (std::conj(psi.upper) * psi.lower).real();
}

double bag_condition_residual(const SpinorValue &psi, int outward_normal) {
  // gamma^1 psi = (chi, -phi)
  const double n = outward_normal;
  const cdouble a = psi.upper + I_unit * n * psi.lower;
  const cdouble b = psi.lower - I_unit * n * psi.upper;
  return std::sqrt(std::norm(a) + std::norm(b));
}

SpinorValue free_spinor(SpinorKind kind, double p, double mass) {
  const double omega = dispersion(p, mass);
  if (!(omega > 0.0))
    throw DomainError("free spinor undefined at p = m = 0");
  const double scale = std::sqrt((omega + mass) / (2.0 * omega));
  const double ratio = p / (omega + mass);
  if (kind == SpinorKind::u)
    return {scale, scale * ratio};
  return {scale * ratio, scale};
}

BagMode::BagMode(FrequencySign sign, double wavenumber, double mass,
                 double length, double origin)
    : sign_(sign), p_(wavenumber), mass_(mass), length_(length),
      origin_(origin) {
  if (!(length > 0.0))
    throw DomainError("mode interval length must be positive");
  omega_ = dispersion(p_, mass_);
  delta_ = phase_delta(p_, mass_);
  norm_ = std::sqrt(omega_ * omega_ /
                    (2.0 * length_ * (omega_ * omega_ + mass_ / length_)));
  const auto kind = sign_ == FrequencySign::plus ? SpinorKind::u : SpinorKind::v;
  s_plus_ = free_spinor(kind, p_, mass_);
  s_minus_ = free_spinor(kind, -p_, mass_);
}

SpinorValue BagMode::value(double x, double t) const {
  const double theta = p_ * (x - origin_) + delta_;
  const cdouble e = std::polar(1.0, theta);
  const cdouble ec = std::conj(e);
  SpinorValue out;
  cdouble time_phase;
  if (sign_ == FrequencySign::plus) {
    out = e * s_plus_ - ec * s_minus_;
    time_phase = std::polar(norm_, -omega_ * t);
  } else {
    out = ec * s_plus_ - e * s_minus_;
    time_phase = std::polar(norm_, omega_ * t);
  }
  return time_phase * out;
}

bool BagMode::in_support(double x) const {
  const double hi = origin_ + length_;
  if (origin_ == 0.0)
    return x >= 0.0 && x <= hi;
  return x > origin_ && x <= hi;
}

SpinorValue stationary_mode(const ModeSpec &spec, double x, double t,
                            const WavenumberTable &table) {
  if (spec.family != ModeFamily::global)
    throw DomainError("stationary_mode requires a global mode spec");
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("x must lie in [0, 1]");
  if (spec.index < 1 || spec.index > table.size())
    throw DomainError("global mode index outside the wavenumber table");
  return BagMode(spec.sign, table.root(spec.index), table.mass(), table.length())
      .value(x, t);
}

BagMode make_mode(const ModeSpec &spec, const WavenumberTable &table,
                  double split_fraction) {
  if (spec.index < 1 || spec.index > table.size())
    throw DomainError("mode index " + std::to_string(spec.index) +
                      " outside the wavenumber table");
  const double origin =
      spec.family == ModeFamily::local_right ? split_fraction : 0.0;
  return BagMode(spec.sign, table.root(spec.index), table.mass(),
                 table.length(), origin);
}

SpinorValue local_mode_initial(const ModeSpec &spec, double x,
                               const FieldConfig &config) {
  config.validate();
  if (spec.family == ModeFamily::global)
    throw DomainError("local_mode_initial requires a local mode spec");
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("x must lie in [0, 1]");
  if (spec.index < 1)
    throw DomainError("mode index is 1-based");
  const bool left = spec.family == ModeFamily::local_left;
  const double length = left ? config.left_length() : config.right_length();
  const double origin = left ? 0.0 : config.split_fraction;
  const double p = static_cast<double>(
      solve_root(config.mass_times_R, length, spec.index, config.root_tol));
  return BagMode(spec.sign, p, config.mass_times_R, length, origin).initial(x);
}

cdouble inner_product_quadrature(const SpinorFunction &f,
                                 const SpinorFunction &g, double a, double b,
                                 std::span<const double> panel_breaks,
                                 const QuadratureOptions &opts) {
  auto integrand = [&](double x) { return dagger_product(f(x), g(x)); };
  return integrate(integrand, a, b, panel_breaks, opts).value;
}

int panels_for_wavenumber(double k, double width) {
  const double oscillations = std::abs(k) * width / (2.0 * std::numbers::pi);
  return 1 + static_cast<int>(oscillations / 4.0);
}

} // namespace dlq
