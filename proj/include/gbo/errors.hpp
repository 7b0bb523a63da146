#pragma once

#include <stdexcept>
#include <string>

namespace gbo {

/// Structural misuse of the API: mismatched grids, malformed files,
/// inconsistent trajectory shapes. Indicates a caller bug.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematical domain violation: the requested operation is undefined on
/// the given input (e.g. a negative-order derivative of a nonzero-mean
/// field, or a non-admissible exponent triple).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The time stepper left the resolvable regime. Carries the last time at
/// which the state was still finite and below the blow-up threshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace gbo
