// Common exception types for the certdecomp library.
#pragma once

#include <stdexcept>

namespace certdecomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions in a linear-algebra or model operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed instance or protocol file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside the LP kernel or an engine.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Instance shape incompatible with the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace certdecomp
