#include "dlq/errors.hpp"
#include "dlq/modes.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace dlq;

TEST_CASE("free spinors are unit norm and u(p) is orthogonal to v(-p)") {
  test::Cases cases(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = cases.uniform(-50.0, 50.0);
    const double m = cases.uniform(0.0, 10.0);
    const auto u = free_spinor(SpinorKind::u, p, m);
    const auto v = free_spinor(SpinorKind::v, p, m);
    const auto v_minus = free_spinor(SpinorKind::v, -p, m);
    CHECK(u.density() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.density() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(dagger_product(u, v_minus)) < 1e-14);
  }
  CHECK_THROWS_AS(free_spinor(SpinorKind::u, 0.0, 0.0), DomainError);
}

TEST_CASE("bag condition and zero current hold at both walls") {
  for (double m : {0.0, 0.5, 10.0}) {
    const auto table = solve_spectrum(m, 1.0, 40);
    for (std::size_t I = 1; I <= 40; ++I)
      for (auto sign : {FrequencySign::plus, FrequencySign::minus}) {
        const ModeSpec spec{ModeFamily::global, I, sign};
        for (double t : {0.0, 0.37}) {
          const auto left = stationary_mode(spec, 0.0, t, table);
          const auto right = stationary_mode(spec, 1.0, t, table);
          CHECK(bag_condition_residual(left, -1) < 1e-12);
          CHECK(bag_condition_residual(right, +1) < 1e-12);
          CHECK(std::abs(current_density(left)) < 1e-12);
          CHECK(std::abs(current_density(right)) < 1e-12);
        }
      }
  }
}

TEST_CASE("local modes satisfy the bag condition at the virtual wall") {
  FieldConfig c = test::small_config(0.5, 0.3, 10, 10);
  const auto tables = SpectrumTables::build(c);
  for (std::size_t i = 1; i <= 10; ++i) {
    const auto left = make_mode({ModeFamily::local_left, i, FrequencySign::plus},
                                tables.left, c.split_fraction);
    const auto right = make_mode({ModeFamily::local_right, i, FrequencySign::minus},
                                 tables.right, c.split_fraction);
    CHECK(bag_condition_residual(left.value(0.0), -1) < 1e-12);
    CHECK(bag_condition_residual(left.value(0.3), +1) < 1e-12);
    CHECK(bag_condition_residual(right.value(0.3), -1) < 1e-12);
    CHECK(bag_condition_residual(right.value(1.0), +1) < 1e-12);
    CHECK(left.in_support(0.3));
    CHECK_FALSE(right.in_support(0.3));
    CHECK(right.initial(0.2).density() == 0.0);
  }
}

TEST_CASE("stationary modes carry a pure phase in time") {
  const auto table = solve_spectrum(1.0, 1.0, 5);
  const ModeSpec plus{ModeFamily::global, 3, FrequencySign::plus};
  const ModeSpec minus{ModeFamily::global, 3, FrequencySign::minus};
  const double t = 0.8, x = 0.41, w = table.frequency(3);
  const auto a = stationary_mode(plus, x, t, table);
  const auto b = std::polar(1.0, -w * t) * stationary_mode(plus, x, 0.0, table);
  CHECK(std::abs(a.upper - b.upper) < 1e-14);
  CHECK(std::abs(a.lower - b.lower) < 1e-14);
  const auto c = stationary_mode(minus, x, t, table);
  const auto d = std::polar(1.0, w * t) * stationary_mode(minus, x, 0.0, table);
  CHECK(std::abs(c.upper - d.upper) < 1e-14);
}

TEST_CASE("global modes are orthonormal under quadrature") {
  const auto table = solve_spectrum(0.5, 1.0, 10);
  std::vector<BagMode> modes;
  for (auto sign : {FrequencySign::plus, FrequencySign::minus})
    for (std::size_t I = 1; I <= 10; ++I)
      modes.push_back(make_mode({ModeFamily::global, I, sign}, table, 0.3));
  QuadratureOptions opts;
  opts.tol = 1e-12;
  double worst = 0.0;
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = a; b < modes.size(); ++b) {
      const auto g = inner_product_quadrature(
          [&](double x) { return modes[a].initial(x); },
          [&](double x) { return modes[b].initial(x); }, 0.0, 1.0, {}, opts);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("local_mode_initial solves its own wavenumber") {
  FieldConfig c = test::small_config(1.0, 0.3, 4, 4);
  const auto tables = SpectrumTables::build(c);
  const ModeSpec spec{ModeFamily::local_right, 4, FrequencySign::plus};
  const auto direct = make_mode(spec, tables.right, c.split_fraction).initial(0.71);
  const auto solved = local_mode_initial(spec, 0.71, c);
  CHECK(std::abs(direct.upper - solved.upper) < 1e-13);
  CHECK(std::abs(direct.lower - solved.lower) < 1e-13);
  CHECK_THROWS_AS(local_mode_initial({ModeFamily::global, 1, FrequencySign::plus}, 0.5, c),
                  DomainError);
  CHECK_THROWS_AS(local_mode_initial(spec, 1.5, c), DomainError);
}

TEST_CASE("stationary_mode argument checks") {
  const auto table = solve_spectrum(1.0, 1.0, 3);
  CHECK_THROWS_AS(stationary_mode({ModeFamily::local_left, 1, FrequencySign::plus}, 0.5, 0, table),
                  DomainError);
  CHECK_THROWS_AS(stationary_mode({ModeFamily::global, 4, FrequencySign::plus}, 0.5, 0, table),
                  DomainError);
  CHECK_THROWS_AS(stationary_mode({ModeFamily::global, 1, FrequencySign::plus}, -0.1, 0, table),
                  DomainError);
}

TEST_CASE("panel heuristic") {
  CHECK(panels_for_wavenumber(0.0, 1.0) == 1);
  CHECK(panels_for_wavenumber(16.01 * 3.14159265358979, 1.0) == 3);
}
