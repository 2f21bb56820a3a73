#include "pinpat/errors.hpp"

namespace pinpat {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::CollinearTriple: return "CollinearTriple";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::EmptyRadiusList: return "EmptyRadiusList";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::NotCoplanar: return "NotCoplanar";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::PinNotInSet: return "PinNotInSet";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace pinpat
