#pragma once

#include <stdexcept>
#include <string>

namespace eqmorse {

enum class ErrorCode {
  ZeroWeight,
  RankTooLarge,
  RankMismatch,
  WeightOnWall,
  SearchBudgetExceeded,
  WindowMismatch,
  OutsideWindow,
  NotFinite,
  NotIsolated,
  WindowTooShallow,
  WeightKilled,
  SymmetryViolation,
  NotAllIsolated,
  MultipleMinima,
  SingularLevel,
  MissingQuantizationData,
  MissingData,
  Overflow,
  ParseError,
  ValidationError,
  Unsupported,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::WeightOnWall: return "WeightOnWall";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::WindowTooShallow: return "WindowTooShallow";
    case ErrorCode::WeightKilled: return "WeightKilled";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::NotAllIsolated: return "NotAllIsolated";
    case ErrorCode::MultipleMinima: return "MultipleMinima";
    case ErrorCode::SingularLevel: return "SingularLevel";
    case ErrorCode::MissingQuantizationData: return "MissingQuantizationData";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eqmorse
