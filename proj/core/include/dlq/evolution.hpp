#pragma once

#include "dlq/bogoliubov.hpp"

#include <span>
#include <vector>

namespace dlq {

/// psi^dagger psi on a (time, x) grid.
struct DensityProfile {
  std::vector<double> times;
  std::vector<double> grid;
  std::vector<double> density; // row-major, one row per time
  std::size_t truncation = 0;  // global modes summed

  double at(std::size_t time_index, std::size_t x_index) const {
    return density[time_index * grid.size() + x_index];
  }
  std::span<const double> row(std::size_t time_index) const {
    return {density.data() + time_index * grid.size(), grid.size()};
  }
};

struct ReconstructionPoint {
  std::size_t terms = 0;
  double l2_error_squared = 0.0; // int |Psi - Psi_N|^2 dx by quadrature
  double parseval_residual = 0.0; // 1 - sum of |coefficient|^2 up to N
};

/// `points` uniformly spaced abscissae on [0, 1], endpoints included.
std::vector<double> uniform_grid(std::size_t points = 801);

/// Truncated global-mode expansion of a local mode at time t:
///   psi+_i = sum_I alpha_iI Psi+_I - beta_iI Psi-_I
///   psi-_i = sum_I beta_iI Psi+_I + alpha_iI Psi-_I
/// summed over I <= set.config.n_global.
std::vector<SpinorValue> evolve_local_mode(const ModeSpec &spec, double t,
                                           std::span<const double> grid,
                                           const BogoliubovSet &set);

DensityProfile density_profile(const ModeSpec &spec,
                               std::span<const double> times,
                               std::span<const double> grid,
                               const BogoliubovSet &set);

/// Largest grid abscissa whose density reaches `fraction` of the row max.
/// For right-region modes the smallest such abscissa is returned.
double density_front(std::span<const double> density,
                     std::span<const double> grid, ModeFamily family,
                     double fraction = 0.01);

/// 1 - sum_I (|alpha_iI|^2 + |beta_iI|^2): weight of the local mode that the
/// global truncation misses.
double parseval_residual(const ModeSpec &spec, const BogoliubovSet &set);

/// int psi^dagger psi dx of the evolved mode outside its light cone:
/// [r + t + margin, 1] for left modes, [0, r - t - margin] for right modes.
double causality_leakage(const ModeSpec &spec, double t,
                         const BogoliubovSet &set, double margin);

/// int psi^dagger psi dx over the whole cavity at time t.
double evolved_norm(const ModeSpec &spec, double t, const BogoliubovSet &set);

/// || psi_rec(., 0) - psi_init ||_{L^2} for a local mode.
double reconstruction_error(const ModeSpec &spec, const BogoliubovSet &set);

/// Global mode Psi^(sign)_I rebuilt from local modes of both regions and
/// both signs with index i <= terms.
std::vector<SpinorValue> reconstruct_global_mode(std::size_t I,
                                                 FrequencySign sign,
                                                 std::size_t terms,
                                                 std::span<const double> grid,
                                                 const BogoliubovSet &set);

/// Squared L^2 error and Parseval residual of the local-basis expansion of
/// a global mode at each term count. Counts must not exceed n_local.
std::vector<ReconstructionPoint>
expand_global_in_local(std::size_t I, FrequencySign sign,
                       std::span<const std::size_t> counts,
                       const BogoliubovSet &set);

} // namespace dlq
