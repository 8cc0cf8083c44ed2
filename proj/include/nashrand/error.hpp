#pragma once

#include <stdexcept>
#include <string>

namespace nashrand {

enum class ErrorKind {
  kParse,
  kNotADistribution,
  kDimensionMismatch,
  kIndexOutOfRange,
  kUnknownFamily,
  kUnsupportedDimension,
  kSingularMatrix,
  kHypothesisViolation,
  kSymmetryViolation,
  kHasPureNE,
  kDimensionTooLarge,
  kNoEquilibriumFound,
  kSamplerStall,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kNotADistribution: return "NotADistribution";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kUnknownFamily: return "UnknownFamily";
    case ErrorKind::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kHypothesisViolation: return "HypothesisViolation";
    case ErrorKind::kSymmetryViolation: return "SymmetryViolation";
    case ErrorKind::kHasPureNE: return "HasPureNE";
    case ErrorKind::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::kNoEquilibriumFound: return "NoEquilibriumFound";
    case ErrorKind::kSamplerStall: return "SamplerStall";
  }
  return "Error";
}

/// Process exit status used by the command-line tool for each error kind:
/// 2 for parse/validation errors, 3 for violated mathematical hypotheses and
/// 4 for resource limits.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kNotADistribution:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kUnknownFamily:
    case ErrorKind::kUnsupportedDimension:
      return 2;
    case ErrorKind::kSingularMatrix:
    case ErrorKind::kHypothesisViolation:
    case ErrorKind::kSymmetryViolation:
    case ErrorKind::kHasPureNE:
      return 3;
    case ErrorKind::kDimensionTooLarge:
    case ErrorKind::kNoEquilibriumFound:
    case ErrorKind::kSamplerStall:
      return 4;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nashrand
