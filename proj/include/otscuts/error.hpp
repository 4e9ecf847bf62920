#pragma once

#include <stdexcept>
#include <string>

namespace otscuts {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DisconnectedError : public Error {
 public:
  using Error::Error;
};

class UnknownBus : public Error {
 public:
  using Error::Error;
};

class BusNotOnCycle : public Error {
 public:
  using Error::Error;
};

class InvalidBigM : public Error {
 public:
  using Error::Error;
};

class SubsetNotInCycle : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  using Error::Error;
};

/// An oracle was asked to enumerate beyond its hard size limits.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class UnboundedError : public Error {
 public:
  using Error::Error;
};

class AllPatternsInfeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace otscuts
