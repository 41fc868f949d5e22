#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace dlq {

/// Neumaier variant of Kahan summation; also correct when an addend is
/// larger in magnitude than the running sum.
template <typename Value> struct CompensatedSum {
  Value sum{0};
  Value compensation{0};

  void add(Value value) {
    const Value t = sum + value;
    if (std::abs(sum) >= std::abs(value))
      compensation += (sum - t) + value;
    else
      compensation += (value - t) + sum;
    sum = t;
  }

  Value value() const { return sum + compensation; }
};

/// Sum of `terms` accumulated in descending magnitude with compensation.
/// The result depends only on the multiset of terms, not on their order.
inline double ordered_sum(std::span<const double> terms) {
  std::vector<double> sorted(terms.begin(), terms.end());
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) {
    const double fa = std::abs(a), fb = std::abs(b);
    return fa != fb ? fa > fb : a > b;
  });
  CompensatedSum<double> acc;
  for (double t : sorted)
    acc.add(t);
  return acc.value();
}

inline std::complex<double>
ordered_sum(std::span<const std::complex<double>> terms) {
  std::vector<double> re, im;
  re.reserve(terms.size());
  im.reserve(terms.size());
  for (const auto &t : terms) {
    re.push_back(t.real());
    im.push_back(t.imag());
  }
  return {ordered_sum(re), ordered_sum(im)};
}

} // namespace dlq
