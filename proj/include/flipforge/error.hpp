#pragma once

#include <stdexcept>
#include <string>

namespace flipforge {

enum class ErrorKind {
  UnknownDiagonal,
  SizeMismatch,
  OutOfRange,
  InvalidTriangulation,
  InvalidSwapSet,
  CrossingPairs,
  InvalidRound,
  CertificateViolation,
  InvalidStart,
  NotFlippable,
  UnknownEdge,
  TooSmall,
  NotAdjacent,
  BudgetExceeded,
  Unreachable,
  BadSize,
  ParseError,
  VerificationFailed,
  PieceLabelMismatch,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownDiagonal: return "UnknownDiagonal";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidTriangulation: return "InvalidTriangulation";
    case ErrorKind::InvalidSwapSet: return "InvalidSwapSet";
    case ErrorKind::CrossingPairs: return "CrossingPairs";
    case ErrorKind::InvalidRound: return "InvalidRound";
    case ErrorKind::CertificateViolation: return "CertificateViolation";
    case ErrorKind::InvalidStart: return "InvalidStart";
    case ErrorKind::NotFlippable: return "NotFlippable";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::PieceLabelMismatch: return "PieceLabelMismatch";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(kind_name(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flipforge
