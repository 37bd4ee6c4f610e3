#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyloop {

enum class ErrorCode {
  // series arithmetic
  InvalidSeries,
  DivisionUndefined,
  // complexes
  BadIndex,
  GhostVertex,
  DominatingVertex,
  NotFlagSkeleton,
  // homotopy algebra
  NotSimplyConnectedOutput,
  NoSolution,
  NotCanonicalP,
  NotADivisor,
  InvalidPairs,
  // linear algebra
  NotIdempotent,
  ZeroVector,
  DimensionMismatch,
  // oracle
  TooLarge,
  NotApplicable,
  // I/O
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidSeries: return "InvalidSeries";
  case ErrorCode::DivisionUndefined: return "DivisionUndefined";
  case ErrorCode::BadIndex: return "BadIndex";
  case ErrorCode::GhostVertex: return "GhostVertex";
  case ErrorCode::DominatingVertex: return "DominatingVertex";
  case ErrorCode::NotFlagSkeleton: return "NotFlagSkeleton";
  case ErrorCode::NotSimplyConnectedOutput: return "NotSimplyConnectedOutput";
  case ErrorCode::NoSolution: return "NoSolution";
  case ErrorCode::NotCanonicalP: return "NotCanonicalP";
  case ErrorCode::NotADivisor: return "NotADivisor";
  case ErrorCode::InvalidPairs: return "InvalidPairs";
  case ErrorCode::NotIdempotent: return "NotIdempotent";
  case ErrorCode::ZeroVector: return "ZeroVector";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::TooLarge: return "TooLarge";
  case ErrorCode::NotApplicable: return "NotApplicable";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code), message_(what) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string &message() const noexcept { return message_; }

private:
  ErrorCode code_;
  std::string message_;
};

} // namespace polyloop
