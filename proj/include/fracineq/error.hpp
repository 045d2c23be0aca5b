#pragma once

#include <stdexcept>
#include <string>

namespace fracineq {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition (e.g. eta(b,a) <= 0, lo > hi).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A derivative order was requested from a custom function lacking it.
class UnavailableDerivative : public Error {
 public:
  using Error::Error;
};

/// Scenario was not certified for the hypothesis of the requested theorem.
class CertificationMissing : public Error {
 public:
  using Error::Error;
};

/// A corollary formula needs a parameter that was not supplied.
class MissingParameter : public Error {
 public:
  using Error::Error;
};

/// Scenario generation rejected too many candidates.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text (grammar or command line); the message names the token.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracineq
