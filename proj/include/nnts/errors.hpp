// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#pragma once

#include <stdexcept>
#include <string>

namespace nnts {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed call: wrong sizes, indices out of range, invalid options.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Unusable input data: parse failures, missing files, empty datasets.
class DataError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: non-convergence, non-finite intermediate values.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input that is mathematically degenerate for the requested operation
// (zero vectors, vanishing marginal densities, zero dispersion).
class DegenerateError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace nnts
