#include "dlq/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

namespace dlq {

const GaussLegendre32 &GaussLegendre32::instance() {
  static const GaussLegendre32 rule = [] {
    GaussLegendre32 r{};
    // Boost returns the non-negative zeros in ascending order.
    const auto zeros = boost::math::legendre_p_zeros<long double>(order);
    std::size_t k = 0;
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it, ++k) {
      const long double x = *it;
      const long double dp = boost::math::legendre_p_prime<long double>(order, x);
      const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
      r.nodes[k] = static_cast<double>(-x);
      r.weights[k] = static_cast<double>(w);
      r.nodes[order - 1 - k] = static_cast<double>(x);
      r.weights[order - 1 - k] = static_cast<double>(w);
    }
    return r;
  }();
  return rule;
}

} // namespace dlq
