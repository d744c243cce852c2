#pragma once

#include <stdexcept>

namespace cubesect {

/// Raised when an argument violates an operation's precondition
/// (all-zero direction, index out of range, wrong ordering, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cubesect
