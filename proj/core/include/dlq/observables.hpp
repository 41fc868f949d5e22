#pragma once

#include "dlq/bogoliubov.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dlq {

/// Partial sums of a (single or double) series at increasing cutoffs.
struct SeriesReport {
  std::vector<std::pair<std::size_t, double>> partial_sums;
  std::optional<double> extrapolated_value;
  bool diverges = false;
  bool converges = false;
  std::string growth_model;

  /// S(N_{k+1}) - S(N_k)
  std::vector<double> increments() const;
};

/// Divergence rule: three successive doublings whose increments agree within
/// 20% and each exceed 10x the rounding-noise estimate. Convergence rule:
/// every increment shrinks to at most `shrink` times its predecessor. The
/// cutoffs must be successive doublings for either flag to be set.
SeriesReport classify_series(std::vector<std::pair<std::size_t, double>> partials,
                             double noise_per_term = 0.0, double shrink = 0.75);

enum class CorrelationChannel {
  particle_particle,
  particle_antiparticle,
  antiparticle_antiparticle,
};

struct CorrelationGrid {
  CorrelationChannel channel = CorrelationChannel::particle_particle;
  std::size_t rows = 0, cols = 0;   // l = 1..rows, k = 1..cols
  std::vector<double> values;       // row-major; signed correlation
  std::vector<std::uint8_t> flagged; // zero normalizer
  double max_imag_residue = 0.0;
  FieldConfig config;

  double at(std::size_t l, std::size_t k) const {
    return values[(l - 1) * cols + (k - 1)];
  }
  double max_abs() const;
};

struct EffectiveTemperature {
  std::vector<double> temperature;
  // <n> >= 1/2: the log flips sign; value kept, entry flagged
  std::vector<std::uint8_t> inverted;
};

enum class AbelPath { diagonal, quadratic };

struct AbelPathPoint {
  std::size_t i = 0, I = 0;
  double value = 0.0; // i I |beta_iI|^2
};

struct AbelPathReport {
  AbelPath path = AbelPath::diagonal;
  std::vector<AbelPathPoint> points;
  std::vector<double> window_maxima;
  double floor = 0.0; // only meaningful for the diagonal path
  bool vanishes = false;
  std::string note;
};

/// <0^G| n_i |0^G> = sum_I |beta_iI|^2 per local index (identical for
/// antiparticles).
std::vector<double> local_occupation(const BogoliubovSet &set, Region region);
std::vector<double> local_antiparticle_occupation(const BogoliubovSet &set,
                                                  Region region);

struct StreamedOccupation {
  std::vector<double> occupation;      // sum over I <= n_global
  std::vector<double> tail_estimate;   // S(n_global) - S(n_global / 2)
  std::size_t n_global = 0;
};

/// Same sums as local_occupation, streamed from the closed form so that
/// truncations far beyond what a dense matrix holds stay cheap. Intended for
/// small split fractions, where the sum extends to P ~ 1/r.
StreamedOccupation streamed_local_occupation(const FieldConfig &config,
                                             Region region);

/// <0^L| N_I |0^L> = sum_i (|beta_iI|^2 + |beta'_iI|^2) per global index.
std::vector<double> removed_mirror_spectrum(const BogoliubovSet &set);

/// sum_i (|alpha_iI|^2 + |beta_iI|^2) for one region, per global index.
std::vector<double> completeness_diagonal(const BogoliubovSet &set, Region region);

/// omega / log((1 - n) / n); zero where n == 0.
EffectiveTemperature effective_temperature(std::span<const double> occupation,
                                           std::span<const double> frequencies);

/// S(N) = sum_{I <= N} Omega_I |alpha_iI|^2 / (1 - <n_i>).
SeriesReport quasilocal_energy(const BogoliubovSet &set, std::size_t i,
                               std::span<const std::size_t> cutoffs,
                               Region region = Region::left);

/// Terms Omega_I |alpha_iI|^2 for I = 1..n_global.
std::vector<double> quasilocal_energy_terms(const BogoliubovSet &set,
                                            std::size_t i,
                                            Region region = Region::left);

/// Least-squares slope of log(mean term) against log(mean Omega) over
/// `blocks` log-spaced blocks spanning global indices [first, last).
double block_loglog_slope(std::span<const double> terms,
                          std::span<const double> abscissa, std::size_t first,
                          std::size_t last, std::size_t blocks);

CorrelationGrid vacuum_correlation(const BogoliubovSet &set,
                                   CorrelationChannel channel,
                                   std::size_t l_max, std::size_t k_max);

/// <phi_l| n'_k |phi_l> - <0^G| n'_k |0^G> = -cov(n_l, n'_k) / (1 - <n_l>).
double strict_localization_defect(const BogoliubovSet &set, std::size_t l,
                                  std::size_t k);

/// cov(n_l, n'_k) from the factorized numerator of the particle channel.
double particle_covariance(const BogoliubovSet &set, std::size_t l,
                           std::size_t k);

/// sum_{i, I <= N} (|beta_iI|^2 + |beta'_iI|^2) for each cutoff N.
SeriesReport hilbert_schmidt_partials(const BogoliubovSet &set,
                                      std::span<const std::size_t> cutoffs);

/// Leading-term floor for the diagonal path: half of
/// r/(pi^2 (1+r)^2) times the smallest per-window maximum of
/// cos^2((2i-1) pi r / 2), windows being `window` consecutive entries.
double diagonal_path_floor(double split_fraction,
                           std::span<const std::size_t> i_values,
                           std::size_t window);

/// i I |beta_iI|^2 along I = i (diagonal) or I = i^2 (quadratic), computed
/// on demand. Window maxima use windows of `window` consecutive entries of
/// `i_values`; for the quadratic path the values are expected to shrink.
AbelPathReport inequivalence_diagnostic(const FieldConfig &config, AbelPath path,
                                        std::span<const std::size_t> i_values,
                                        std::size_t window = 50);

/// Quadratic path: maxima of i I |beta|^2 over dyadic windows
/// [start 2^k, start 2^{k+1}), k = 0..windows-1.
std::vector<double> quadratic_path_dyadic_maxima(const FieldConfig &config,
                                                 std::size_t start,
                                                 std::size_t windows);

/// Row series over I at fixed i, and column series over i at fixed I, for
/// sum (|beta|^2 + |beta'|^2). Cutoffs are doublings up to the truncation.
std::pair<SeriesReport, SeriesReport>
single_series_convergence(const BogoliubovSet &set, std::size_t i = 1,
                          std::size_t I = 1);

/// sum_J (|alpha_iJ|^2 N_J + |beta_iJ|^2 (1 - Nbar_J)) for a global Fock
/// basis state given by occupation indicators.
double pauli_norm(const BogoliubovSet &set, std::size_t i,
                  std::span<const std::uint8_t> particles,
                  std::span<const std::uint8_t> antiparticles);

} // namespace dlq
