#pragma once

#include <stdexcept>
#include <string>

namespace pinpat {

enum class ErrorCode {
  DuplicatePoints,
  CollinearTriple,
  ZeroVector,
  DimensionMismatch,
  BadDimension,
  EmptyRadiusList,
  BadLength,
  TooLarge,
  DomainError,
  NotPrime,
  OutOfWindow,
  PreconditionViolated,
  WindowEmpty,
  NotCoplanar,
  LengthMismatch,
  PinNotInSet,
  NotOrthogonal,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace pinpat
