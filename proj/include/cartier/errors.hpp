#ifndef CARTIER_ERRORS_HPP
#define CARTIER_ERRORS_HPP

#include <stdexcept>

namespace cartier {

/// Malformed or out-of-contract input (invalid tree, bad key, wrong n).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A divisor that was required to be Cartier is not.
class NotCartier : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Two independent computations of the same quantity disagreed.
class PropertyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cartier

#endif  // CARTIER_ERRORS_HPP
