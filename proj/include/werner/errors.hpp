#pragma once

#include <stdexcept>
#include <string>

namespace werner {

/// Matrix has the wrong shape for the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input fails a numerical precondition (Hermiticity, unit trace, positivity, n >= 1).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The normalization 3(1-p)^n + (1+3p)^n vanishes, so the channel output is undefined.
class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, double singular_p)
      : std::domain_error(what), singular_p_(singular_p) {}

  double singular_p() const noexcept { return singular_p_; }

 private:
  double singular_p_;
};

}  // namespace werner
