#include "dlq/summation.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace dlq;

TEST_CASE("cancellation that defeats naive summation") {
  const std::vector<double> terms{1e16, 1.0, -1e16};
  CHECK(ordered_sum(terms) == 1.0);

  CompensatedSum<double> acc;
  for (double t : {1.0, 1e100, 1.0, -1e100})
    acc.add(t);
  CHECK(acc.value() == 2.0);
}

TEST_CASE("harmonic partial sum matches the extended-precision reference") {
  std::vector<double> terms;
  long double reference = 0.0L;
  for (int k = 1; k <= 100000; ++k) {
    terms.push_back(1.0 / k);
    reference += 1.0L / k;
  }
  CHECK(ordered_sum(terms) == doctest::Approx(static_cast<double>(reference)).epsilon(1e-15));
}

TEST_CASE("ordered sum is independent of term order") {
  test::Cases cases(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> terms;
    for (int k = 0; k < 500; ++k)
      terms.push_back(cases.uniform(-1.0, 1.0) * std::pow(10.0, cases.uniform(-8, 8)));
    const double first = ordered_sum(terms);
    std::reverse(terms.begin(), terms.end());
    CHECK(ordered_sum(terms) == first);
    std::rotate(terms.begin(), terms.begin() + 137, terms.end());
    CHECK(ordered_sum(terms) == first);
  }
}

TEST_CASE("complex sums split into real and imaginary parts") {
  const std::vector<std::complex<double>> terms{{1e16, 1.0}, {1.0, -1e16}, {-1e16, 1e16}};
  const auto s = ordered_sum(terms);
  CHECK(s.real() == 1.0);
  CHECK(s.imag() == 1.0);
}
