#pragma once

#include <stdexcept>
#include <string>

namespace innov {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

/// Invalid argument or violated operation precondition (exit code 2 at the CLI).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class NetworkError : public Error {
public:
  using Error::Error;
};

} // namespace innov
