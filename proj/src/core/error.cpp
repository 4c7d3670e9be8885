#include "sumnet/error.hpp"

namespace sumnet {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidDesign: return "InvalidDesign";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::CharMismatch: return "CharMismatch";
    case ErrorCode::UnsupportedLambda: return "UnsupportedLambda";
    case ErrorCode::DegenerateVPrime: return "DegenerateVPrime";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace sumnet
