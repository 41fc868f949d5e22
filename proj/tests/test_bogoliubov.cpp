#include "dlq/bogoliubov.hpp"
#include "dlq/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dlq;

namespace {

double corner_mismatch(const FieldConfig &c, std::size_t n) {
  const auto tables = SpectrumTables::build(c);
  double worst = 0.0;
  for (Region region : {Region::left, Region::right})
    for (CoefficientKind kind : {CoefficientKind::alpha, CoefficientKind::beta})
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t I = 1; I <= n; ++I) {
          if (is_degenerate(region, i, I, c, tables))
            continue;
          const auto closed = coefficient_closed_form(region, kind, i, I, c, tables);
          const auto quad = coefficient_quadrature(region, kind, i, I, c, tables);
          worst = std::max(worst, std::abs(closed - quad));
        }
  return worst;
}

} // namespace

TEST_CASE("closed forms agree with overlap quadrature") {
  CHECK(corner_mismatch(test::small_config(0.5, 0.3, 4, 4), 4) < 1e-8);
  CHECK(corner_mismatch(test::small_config(1.0, 1.0 / std::numbers::pi, 4, 4), 4) < 1e-8);
  CHECK(corner_mismatch(test::small_config(7.0, 0.62, 4, 4), 4) < 1e-8);
}

TEST_CASE("alpha is real and beta is imaginary") {
  const auto set = build_matrices(test::small_config(2.0, 0.45, 8, 60));
  for (std::size_t i = 1; i <= 8; ++i)
    for (std::size_t I = 1; I <= 60; ++I) {
      CHECK(set.alpha(i, I).imag() == 0.0);
      CHECK(set.alpha_prime(i, I).imag() == 0.0);
      CHECK(set.beta(i, I).real() == 0.0);
      CHECK(set.beta_prime(i, I).real() == 0.0);
    }
}

TEST_CASE("degenerate frequencies switch to quadrature") {
  // m = 0, r = 1/3: the first left wavenumber 3 pi / 2 equals P_2
  const auto c = test::small_config(0.0, 1.0 / 3.0, 3, 6);
  const auto set = build_matrices(c);
  CHECK(set.used_fallback(Region::left, 1, 2));
  CHECK_FALSE(set.used_fallback(Region::left, 1, 1));
  CHECK(set.fallback_count() >= 1);
  const auto a = set.alpha(1, 2);
  CHECK(std::isfinite(a.real()));
  CHECK(std::abs(a - coefficient_quadrature(Region::left, CoefficientKind::alpha, 1, 2, c,
                                            set.tables)) < 1e-12);
  // neighbours computed in closed form stay consistent with quadrature
  CHECK(std::abs(set.alpha(1, 3) - coefficient_quadrature(Region::left, CoefficientKind::alpha,
                                                          1, 3, c, set.tables)) < 1e-8);
}

TEST_CASE("on-demand beta reproduces matrix entries") {
  const auto c = test::small_config(1.0, 0.3, 6, 80);
  const auto set = build_matrices(c);
  for (auto [i, I] : {std::pair{1, 1}, {3, 40}, {6, 80}}) {
    CHECK(std::abs(beta_on_demand(Region::left, i, I, c) - set.beta(i, I)) < 1e-14);
    CHECK(std::abs(beta_on_demand(Region::right, i, I, c) - set.beta_prime(i, I)) < 1e-14);
  }
  // beyond the truncation
  CHECK(std::isfinite(std::abs(beta_on_demand(Region::left, 50, 2500, c))));
}

TEST_CASE("unitarity conditions tighten as the truncation grows") {
  const auto coarse = check_conditions(build_matrices(test::small_config(1.0, 0.3, 10, 500)), 10);
  const auto fine = check_conditions(build_matrices(test::small_config(1.0, 0.3, 10, 1000)), 10);
  CHECK(fine.cond1_max_err < coarse.cond1_max_err);
  CHECK(fine.cond1_max_err < 2e-3);
  CHECK(fine.cond2_max_err < 2e-3);
  CHECK(fine.unprimed_diagonal_max < 1.0);
}

TEST_CASE("completeness over the local index converges with n_local") {
  const auto small = check_conditions(build_matrices(test::small_config(1.0, 0.3, 50, 10)), 10);
  const auto large = check_conditions(build_matrices(test::small_config(1.0, 0.3, 400, 10)), 10);
  CHECK(large.cond3_combined_max_err < small.cond3_combined_max_err);
  CHECK(large.cond3_combined_max_err < 1e-2);
  CHECK(large.cond4_max_err < 1e-2);
}

TEST_CASE("builds are deterministic") {
  const auto c = test::small_config(0.5, 0.3, 5, 50);
  const auto a = build_matrices(c);
  const auto b = build_matrices(c);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta_prime == b.beta_prime);
}

TEST_CASE("index checks") {
  const auto c = test::small_config(1.0, 0.3, 3, 5);
  const auto tables = SpectrumTables::build(c);
  CHECK_THROWS_AS(coefficient(Region::left, CoefficientKind::beta, 4, 1, c, tables), DomainError);
  CHECK_THROWS_AS(coefficient(Region::left, CoefficientKind::beta, 1, 6, c, tables), DomainError);
  CHECK_THROWS_AS(check_conditions(build_matrices(c), 4), DomainError);
}
