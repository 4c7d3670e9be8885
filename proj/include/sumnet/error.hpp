#pragma once

#include <stdexcept>
#include <string>

namespace sumnet {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  DimensionMismatch,
  FieldMismatch,
  UnsupportedOrder,
  ParseError,
  InvalidDesign,
  OutOfRange,
  CharMismatch,
  UnsupportedLambda,
  DegenerateVPrime,
  ShapeMismatch,
  InvalidGamma,
  TooLarge,
  Io,
  Overflow,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the core library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sumnet
