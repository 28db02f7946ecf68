#pragma once

#include <stdexcept>
#include <string>

namespace ctalg {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  NotHomogeneous,
  ZeroInput,
  CenterCollision,
  ComplexConstant,
  MalformedForest,
  NoSuchEdge,
  NotAForest,
  MixedDegrees,
  OutOfRange,
  InsufficientPoints,
  InterpolationMismatch,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::CenterCollision: return "CenterCollision";
    case ErrorKind::ComplexConstant: return "ComplexConstant";
    case ErrorKind::MalformedForest: return "MalformedForest";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::NotAForest: return "NotAForest";
    case ErrorKind::MixedDegrees: return "MixedDegrees";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::InterpolationMismatch: return "InterpolationMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ctalg
