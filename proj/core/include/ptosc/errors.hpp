#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptosc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in a potential expression; position is a 0-based offset into
// the input string.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct ValidationError : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct SingularShift : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct DegenerateLevel : Error {
  using Error::Error;
};
struct TruncationTooSmall : Error {
  using Error::Error;
};
struct InsufficientOrders : Error {
  using Error::Error;
};
struct SingularPadeTable : Error {
  using Error::Error;
};

}  // namespace ptosc
