#include "dlq/errors.hpp"
#include "dlq/evolution.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace dlq;

namespace {
const ModeSpec left_plus{ModeFamily::local_left, 1, FrequencySign::plus};
const ModeSpec left_minus{ModeFamily::local_left, 1, FrequencySign::minus};
const ModeSpec right_plus{ModeFamily::local_right, 2, FrequencySign::plus};
} // namespace

TEST_CASE("t = 0 expansion reproduces the local mode") {
  const auto set = build_matrices(test::small_config(0.5, 0.3, 2, 200));
  for (const auto &spec : {left_plus, left_minus}) {
    const double err = reconstruction_error(spec, set);
    CHECK(err < 0.05);
    // orthonormal expansion: squared distance equals the missed weight
    CHECK(err * err == doctest::Approx(parseval_residual(spec, set)).epsilon(1e-6));
  }
}

TEST_CASE("norm is conserved in time") {
  const auto set = build_matrices(test::small_config(0.5, 0.3, 2, 200));
  for (const auto &spec : {left_plus, right_plus}) {
    const double n0 = evolved_norm(spec, 0.0, set);
    CHECK(std::abs(evolved_norm(spec, 0.3, set) - n0) < 1e-6);
    CHECK(n0 == doctest::Approx(1.0 - parseval_residual(spec, set)).epsilon(1e-8));
  }
}

TEST_CASE("light-cone leakage shrinks with the truncation") {
  const auto coarse = build_matrices(test::small_config(0.5, 0.3, 2, 100));
  const auto fine = build_matrices(test::small_config(0.5, 0.3, 2, 400));
  CHECK(causality_leakage(left_plus, 0.0, fine, 0.05) < 1e-3);
  CHECK(causality_leakage(left_plus, 0.3, fine, 0.05) <
        causality_leakage(left_plus, 0.3, coarse, 0.05));
  CHECK(causality_leakage(right_plus, 0.1, fine, 0.05) < 1e-3);
  CHECK_THROWS_AS(causality_leakage(left_plus, 0.7, fine, 0.05), DomainError);
  CHECK_THROWS_AS(causality_leakage(right_plus, 0.3, fine, 0.05), DomainError);
}

TEST_CASE("density front follows x = r + t") {
  const auto set = build_matrices(test::small_config(0.5, 0.3, 1, 400));
  const auto grid = uniform_grid(801);
  const double times[] = {0.0, 0.3, 0.6};
  const auto profile = density_profile(left_plus, times, grid, set);
  CHECK(profile.truncation == 400);
  for (std::size_t k = 0; k < 3; ++k) {
    for (double d : profile.row(k))
      CHECK(d >= 0.0);
    const double front = density_front(profile.row(k), grid, ModeFamily::local_left);
    CHECK(std::abs(front - (0.3 + times[k])) < 0.03);
  }
}

TEST_CASE("global modes rebuilt from the local basis") {
  const auto set = build_matrices(test::small_config(0.5, 0.3, 200, 5));
  const std::size_t counts[] = {15, 50, 200};
  const auto points = expand_global_in_local(3, FrequencySign::plus, counts, set);
  REQUIRE(points.size() == 3);
  CHECK(points[1].l2_error_squared < points[0].l2_error_squared);
  CHECK(points[2].l2_error_squared < points[1].l2_error_squared);
  CHECK(points[2].l2_error_squared < 0.02);
  for (const auto &p : points)
    CHECK(std::abs(p.l2_error_squared - p.parseval_residual) < 1e-8);

  const auto minus = expand_global_in_local(2, FrequencySign::minus, counts, set);
  for (const auto &p : minus)
    CHECK(std::abs(p.l2_error_squared - p.parseval_residual) < 1e-8);

  const std::size_t too_many[] = {201};
  CHECK_THROWS_AS(expand_global_in_local(3, FrequencySign::plus, too_many, set), DomainError);
}

TEST_CASE("grid and argument checks") {
  const auto grid = uniform_grid(5);
  CHECK(grid == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_THROWS_AS(uniform_grid(1), DomainError);
  const auto set = build_matrices(test::small_config(0.5, 0.3, 2, 10));
  CHECK_THROWS_AS(evolve_local_mode(left_plus, -1.0, grid, set), DomainError);
  CHECK_THROWS_AS(evolve_local_mode({ModeFamily::global, 1, FrequencySign::plus}, 0.0, grid, set),
                  DomainError);
  CHECK_THROWS_AS(evolve_local_mode({ModeFamily::local_left, 3, FrequencySign::plus}, 0.0, grid, set),
                  DomainError);
}
