#pragma once

#include "dlq/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <vector>

namespace dlq {

/// 32-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre32 {
  static constexpr std::size_t order = 32;
  std::array<double, order> nodes;
  std::array<double, order> weights;

  static const GaussLegendre32 &instance();
};

struct QuadratureOptions {
  double tol = 1e-10;
  int max_depth = 40;
  int initial_panels = 1; // per break-delimited segment
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

namespace detail {

template <typename F>
std::complex<double> gauss_panel(const F &f, double a, double b) {
  const auto &rule = GaussLegendre32::instance();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < GaussLegendre32::order; ++k)
    acc += rule.weights[k] * std::complex<double>(f(mid + half * rule.nodes[k]));
  return half * acc;
}

struct AdaptiveState {
  std::complex<double> value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool failed = false;
};

template <typename F>
void refine(const F &f, double a, double b, std::complex<double> whole,
            double tol, int depth, int max_depth, AdaptiveState &state) {
  const double mid = 0.5 * (a + b);
  const auto left = gauss_panel(f, a, mid);
  const auto right = gauss_panel(f, mid, b);
  const auto halves = left + right;
  const double diff = std::abs(halves - whole);
  if (diff <= tol || depth >= max_depth || mid == a || mid == b) {
    if (diff > tol)
      state.failed = true;
    state.value += halves;
    state.error += diff;
    state.panels += 2;
    return;
  }
  refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, state);
  refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, state);
}

} // namespace detail

/// Composite adaptive Gauss-Legendre integral of a scalar (real or complex)
/// function over [a, b]. Panels are split at every break inside (a, b) and
/// bisected until two successive levels agree within a width-proportional
/// share of `opts.tol`.
template <typename F>
QuadratureResult integrate(const F &f, double a, double b,
                           std::span<const double> breaks = {},
                           const QuadratureOptions &opts = {}) {
  if (!(a < b))
    throw DomainError("integration requires a < b");
  if (!(opts.tol > 0.0))
    throw DomainError("quadrature tolerance must be positive");
  std::vector<double> edges{a};
  for (double x : breaks) {
    if (x > a && x < b)
      edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  detail::AdaptiveState state;
  const double total = b - a;
  const int n0 = std::max(1, opts.initial_panels);
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double width = (edges[s + 1] - edges[s]) / n0;
    for (int k = 0; k < n0; ++k) {
      const double lo = edges[s] + k * width;
      const double hi = (k + 1 == n0) ? edges[s + 1] : lo + width;
      const auto whole = detail::gauss_panel(f, lo, hi);
      detail::refine(f, lo, hi, whole, opts.tol * (hi - lo) / total, 0,
                     opts.max_depth, state);
    }
  }
  if (state.failed) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not reach tolerance "
        << opts.tol << " (achieved estimate " << state.error << ")";
    throw QuadratureError(msg.str(), state.error);
  }
  return {state.value, state.error, state.panels};
}

} // namespace dlq
