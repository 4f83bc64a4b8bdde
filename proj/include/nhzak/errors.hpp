#pragma once

#include <stdexcept>
#include <string>

namespace nhzak {

// Bad input: malformed config, out-of-range parameter, inconsistent timing.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int line)
      : ValidationError(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ProtocolTimingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Anything that goes wrong inside the numerics.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |r| below eps_EP: the two eigenvectors coalesce.
class ExceptionalPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SpectrumNotRealError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepTooLargeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroNormError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PacketNotInRingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhzak
