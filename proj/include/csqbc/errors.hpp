#pragma once

#include <stdexcept>
#include <string>

namespace csqbc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidSplit : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct SingularDenominator : Error { using Error::Error; };
struct DegenerateOutcome : Error { using Error::Error; };
struct UnknownProtocol : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace csqbc
