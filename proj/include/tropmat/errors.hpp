#pragma once

#include <stdexcept>
#include <string>

namespace tropmat {

/// Bad input or a violated precondition. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed object failed a check that a proved statement guarantees.
/// Seeing one means a bug (or an input outside the guaranteed regime).
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tropmat
