#pragma once

#include <stdexcept>
#include <string>

namespace wnc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad geometry, dangling ids, unknown fields.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Conflict graph too large for exact maximal-independent-set enumeration.
class EnumerationError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown inside the simplex solver.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace wnc
