#pragma once

#include <stdexcept>
#include <string>

namespace tnormlab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value left [0,1], became NaN, or an expression could not be evaluated.
/// Carries the argument pair at which the violation happened.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double x, double y)
      : Error(what), x_(x), y_(y) {}
  explicit DomainError(const std::string& what) : Error(what) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

/// Invalid family parameters, malformed ordinal sums, bad grid settings.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A routine was called on a t-norm outside its structural precondition
/// (e.g. a non-monotone diagonal handed to the pseudo-inverse).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Parameter estimation could not bracket enough per-sample roots.
class FitFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace tnormlab
