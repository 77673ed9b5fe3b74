#ifndef HUS_ERRORS_HPP
#define HUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hus {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Spec-file syntax error. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("parse error at line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A caller violated an operation's contract (bad model class, failed
/// hypothesis, invalid argument). Maps to CLI exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InvalidOperator : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnsupportedModel : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotStable : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotInvertible : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotPositiveSelfAdjoint : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BoundNotLessThanOne : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SupportsOverlap : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CoercivityFails : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class Incomparable : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class Unbounded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class HypothesisFails : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DomainViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ZeroScalar : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Numeric breakdown (operator indistinguishable from zero, series cap hit).
/// Maps to CLI exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NumericallyZero : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergent : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace hus

#endif  // HUS_ERRORS_HPP
