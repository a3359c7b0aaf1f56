#pragma once

#include <stdexcept>
#include <string>

namespace fefflab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument or evaluation point lies outside the declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A derivative jet violates conjugate pairing or Hermitian symmetry.
class MalformedJetError : public Error {
 public:
  using Error::Error;
};

/// A density that must be positive (Levi form, curvature) is not.
class NotPseudoconvexError : public Error {
 public:
  using Error::Error;
};

/// An iterative or extrapolated quantity failed to settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A string could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fefflab
