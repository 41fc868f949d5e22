#pragma once

#include <stdexcept>
#include <string>

namespace dlq {

// Invalid arguments: negative masses, indices out of range, bad tolerances.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Root bracketing failed to reach the requested residual.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string &what, double lo, double hi)
      : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

// Adaptive quadrature hit its depth limit before the tolerance was met.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string &what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

// A cache file exists but was produced for a different configuration.
class CacheInvalidError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or truncated file.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace dlq
