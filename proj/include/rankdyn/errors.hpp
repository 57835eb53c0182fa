#pragma once

#include <stdexcept>
#include <string>

namespace rankdyn {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-supplied input violated a contract: malformed file, negative raw
/// value, length mismatch, bad flag combination. Maps to process exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input passed validation but is numerically unusable: degenerate indicator,
/// singular or non-positive-definite matrix, failed estimation. Exit code 2.
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankdyn
