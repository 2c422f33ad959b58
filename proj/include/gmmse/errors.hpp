#pragma once

#include <stdexcept>
#include <string>

namespace gmmse {

/// Input violates a documented invariant (weights, shapes, symmetry, PD).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown on otherwise well-formed input, e.g. a Cholesky
/// factorization that fails at an extreme noise scale.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmmse
