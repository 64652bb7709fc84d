#pragma once

#include <stdexcept>

namespace ptbreak {

/// Invalid user-supplied parameter or configuration value.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear-algebra backend failure (non-convergence, singular solve).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violation of a structural guarantee, e.g. a complex eigenvalue whose
/// conjugate partner is missing.  Signals a solver or symmetry bug, not
/// bad user input.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested value lies outside the available data range.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptbreak
