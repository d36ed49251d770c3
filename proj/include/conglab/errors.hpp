#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse"; }
};

/// A stated precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// A configured size cap would be exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t partial = 0)
      : Error(what), partial_(partial) {}
  const char* kind() const noexcept override { return "cap"; }
  std::size_t partial_size() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

/// A verifier found a contradiction with a result that holds for every
/// congruence subgroup; this always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "internal"; }
};

}  // namespace conglab
