#pragma once

#include <stdexcept>
#include <string>

namespace scg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed game, joint action, rule or file content.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A coverage count exceeded the largest multiplicity a rule defines.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A ratio with a zero denominator (e.g. zero optimal welfare).
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// The rule cannot be used for the requested quantity (e.g. f(1) = 0).
class InvalidRuleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a specialised routine does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A linear program turned out infeasible or unbounded where an optimum was required.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Reached a state that the theory rules out; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace scg
