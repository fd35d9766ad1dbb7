#pragma once

#include <stdexcept>
#include <string>

namespace malle {

// Base of every library failure. The CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A reference (catalog name, preset, file) could not be resolved.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A configured size or memory cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a defect, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace malle
