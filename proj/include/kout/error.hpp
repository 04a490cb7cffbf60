#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kout {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
struct InvalidArgument : Error {
  using Error::Error;
};

/// Malformed serialized input. `offset` is the byte at which parsing failed.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

/// Well-formed input describing an invalid object (e.g. an endpoint >= n).
struct ValidationError : Error {
  using Error::Error;
};

/// A hard cap (rejection attempts, cycle count, SCC size) was exceeded.
struct CapExceeded : Error {
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap(cap) {}
  std::size_t cap;
};

/// A structural invariant failed to hold on a computed object.
struct InvariantViolation : Error {
  using Error::Error;
};

struct IoError : Error {
  IoError(const std::string& what, std::string path)
      : Error(what + ": " + path), path(std::move(path)) {}
  std::string path;
};

}  // namespace kout
