#pragma once

#include "dlq/modes.hpp"
#include "dlq/spectrum.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dlq {

enum class Region { left, right };
enum class CoefficientKind { alpha, beta };

/// Dense row-major complex matrix. Element access is 1-based to match the
/// (local i, global I) labels.
class CoefficientMatrix {
public:
  CoefficientMatrix() = default;
  CoefficientMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble &operator()(std::size_t i, std::size_t I) {
    return data_[(i - 1) * cols_ + (I - 1)];
  }
  const cdouble &operator()(std::size_t i, std::size_t I) const {
    return data_[(i - 1) * cols_ + (I - 1)];
  }
  std::span<const cdouble> row(std::size_t i) const {
    return {data_.data() + (i - 1) * cols_, cols_};
  }
  std::span<const cdouble> data() const { return data_; }

  bool operator==(const CoefficientMatrix &) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cdouble> data_;
};

/// Wavenumber tables for one configuration: lengths r, 1 - r and 1.
struct SpectrumTables {
  WavenumberTable left;
  WavenumberTable right;
  WavenumberTable global;

  static SpectrumTables build(const FieldConfig &config);
};

struct BogoliubovSet {
  FieldConfig config;
  CoefficientMatrix alpha, beta;             // left region
  CoefficientMatrix alpha_prime, beta_prime; // right region
  SpectrumTables tables;
  // 1 where the entry came from the quadrature fallback; row-major (i, I)
  std::vector<std::uint8_t> fallback_left, fallback_right;

  const CoefficientMatrix &alpha_of(Region region) const {
    return region == Region::left ? alpha : alpha_prime;
  }
  const CoefficientMatrix &beta_of(Region region) const {
    return region == Region::left ? beta : beta_prime;
  }
  bool used_fallback(Region region, std::size_t i, std::size_t I) const;
  std::size_t fallback_count() const;
};

struct ConditionReport {
  double cond1_max_err = 0.0; // sum_I (a_i a*_j + b_i b*_j) - delta_ij
  double cond2_max_err = 0.0; // sum_I (a_i b_j + b_i a_j)
  double cond3_combined_max_err = 0.0;
  double cond4_max_err = 0.0;
  // max_I sum_i (|a_iI|^2 + |b_iI|^2), left region only; strictly < 1
  double unprimed_diagonal_max = 0.0;
  std::size_t n_local = 0;
  std::size_t n_global = 0;
  std::size_t index_range = 0;
};

// Closed forms evaluated at explicit wavenumbers (no tables needed). `p` is
// the local wavenumber, `P` the global one, `r` the split point (R == 1).
double alpha_left_closed_form(double p, double P, double mass, double r);
cdouble beta_left_closed_form(double p, double P, double mass, double r);
double alpha_right_closed_form(double p, double P, double mass, double r);
cdouble beta_right_closed_form(double p, double P, double mass, double r);

/// |Omega_I - omega_i| < degeneracy_tol * Omega_I
bool is_degenerate(Region region, std::size_t i, std::size_t I,
                   const FieldConfig &config, const SpectrumTables &tables);

/// Closed form, no fallback.
cdouble coefficient_closed_form(Region region, CoefficientKind kind,
                                std::size_t i, std::size_t I,
                                const FieldConfig &config,
                                const SpectrumTables &tables);

/// Overlap integral of the defining inner products:
///   alpha_iI = (Psi+_I | psi+_i),  beta_iI = -(Psi-_I | psi+_i)
/// over the local support.
cdouble coefficient_quadrature(Region region, CoefficientKind kind,
                               std::size_t i, std::size_t I,
                               const FieldConfig &config,
                               const SpectrumTables &tables);

/// Closed form unless the alpha denominator is degenerate, in which case
/// the quadrature value is returned.
cdouble coefficient(Region region, CoefficientKind kind, std::size_t i,
                    std::size_t I, const FieldConfig &config,
                    const SpectrumTables &tables);

/// beta at arbitrary (i, I), solving the two roots on demand.
cdouble beta_on_demand(Region region, std::size_t i, std::size_t I,
                       const FieldConfig &config);

BogoliubovSet build_matrices(const FieldConfig &config);

/// Unitarity conditions over i, j <= index_range (rows) and
/// I, J <= index_range (columns).
ConditionReport check_conditions(const BogoliubovSet &set,
                                 std::size_t index_range);

} // namespace dlq
