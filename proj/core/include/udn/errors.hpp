#pragma once

#include <stdexcept>
#include <string>

namespace udn {

// Invalid parameter domain (non-positive density, alpha <= 2, price >= b, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical procedure failed to converge. Carries the best partial estimate so
// callers can report it instead of losing the run.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}

  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

}  // namespace udn
