#include "dlq/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dlq;

TEST_CASE("Gauss-Legendre rule integrates polynomials to degree 63") {
  const auto &rule = GaussLegendre32::instance();
  double wsum = 0.0;
  for (double w : rule.weights)
    wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
  for (int deg : {2, 10, 40, 62}) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.order; ++k)
      acc += rule.weights[k] * std::pow(rule.nodes[k], deg);
    CHECK(acc == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-13));
  }
  for (std::size_t k = 0; k + 1 < rule.order; ++k)
    CHECK(rule.nodes[k] < rule.nodes[k + 1]);
}

TEST_CASE("oscillatory integrand") {
  const double k = 400.0;
  auto f = [k](double x) { return std::cos(k * x) * std::cos(k * x); };
  QuadratureOptions opts;
  opts.tol = 1e-12;
  const auto res = integrate(f, 0.0, 1.0, {}, opts);
  const double exact = 0.5 + std::sin(2 * k) / (4 * k);
  CHECK(std::abs(res.value.real() - exact) < 1e-12);
}

TEST_CASE("breaks handle a jump exactly") {
  auto step = [](double x) { return x <= 0.3 ? 1.0 : 0.0; };
  const double breaks[] = {0.3};
  const auto res = integrate(step, 0.0, 1.0, breaks);
  CHECK(res.value.real() == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("complex integrand") {
  auto f = [](double x) { return std::polar(1.0, 3.0 * x); };
  const auto res = integrate(f, 0.0, std::numbers::pi);
  CHECK(std::abs(res.value - std::complex<double>(0.0, 2.0 / 3.0)) < 1e-13);
}

TEST_CASE("failure to converge raises with the achieved estimate") {
  auto singular = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.5)); };
  QuadratureOptions opts;
  opts.tol = 1e-14;
  opts.max_depth = 4;
  CHECK_THROWS_AS(integrate(singular, 0.0, 1.0, {}, opts), QuadratureError);
  CHECK_THROWS_AS(integrate(singular, 1.0, 0.0), DomainError);
}
