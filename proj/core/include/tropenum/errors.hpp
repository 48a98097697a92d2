#pragma once

#include <stdexcept>
#include <string>

namespace tropenum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (polygon strings, rationals, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidPolygon : public Error {
 public:
  using Error::Error;
};

// Violated preconditions of an operation, e.g. g < 1 or r < 0.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The point configuration is not generic for some type: a solution family of
// positive dimension, or a solution on the boundary of a stratum.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class GenericityExhausted : public Error {
 public:
  using Error::Error;
};

class InconsistentProfile : public Error {
 public:
  using Error::Error;
};

class MarkCollision : public Error {
 public:
  using Error::Error;
};

}  // namespace tropenum
