#pragma once

#include <stdexcept>
#include <string>

namespace rmc {

/// Malformed or inconsistent input document (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An analysis was asked to run outside the hypotheses under which its
/// answer means anything (CLI exit code 1).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource limit was hit: state cap, semigroup cap, depth cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations that must agree did not. Always a bug or a
/// counterexample worth keeping.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rmc
