#pragma once

#include <stdexcept>
#include <string>

namespace cslab {

// Malformed or out-of-contract input (bad characters, sizes, ranges).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exponential oracle was asked for more than its size guard allows.
class SizeGuardError : public InputError {
 public:
  using InputError::InputError;
};

// A numerical procedure failed (non-convergence, inadmissible root).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact invariant was observed to be violated.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cslab
