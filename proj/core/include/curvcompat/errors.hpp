#pragma once

#include <stdexcept>
#include <string>

namespace curvcompat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A tensor that was required to carry the Riemann symmetries does not.
class GctViolation : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested from a jet that does not carry enough orders.
class InsufficientJetOrder : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvcompat
