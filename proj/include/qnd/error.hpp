#pragma once

#include <stdexcept>
#include <string>

namespace qnd {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite, out-of-range, or otherwise malformed argument.
class InvalidParam : public Error {
 public:
  using Error::Error;
};

// The Fock cutoff drops more probability than the requested tail tolerance.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

// Outcome density underflowed; the outcome lies outside the state's support.
class ZeroProbability : public Error {
 public:
  using Error::Error;
};

// Outcome grid does not hold enough of the probability mass.
class GridTooNarrow : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnd
