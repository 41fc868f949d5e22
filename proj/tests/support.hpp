#pragma once

#include "dlq/bogoliubov.hpp"

#include <cstdint>
#include <random>

namespace dlq::test {

// Fixed-seed generator for property tests; every run sees the same cases.
class Cases {
public:
  explicit Cases(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

private:
  std::mt19937_64 rng_;
};

inline FieldConfig small_config(double mass, double split, std::size_t n_local,
                                std::size_t n_global) {
  FieldConfig c;
  c.mass_times_R = mass;
  c.split_fraction = split;
  c.n_local = n_local;
  c.n_global = n_global;
  return c;
}

} // namespace dlq::test
