#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace azk {

/// Error codes shared by every module. Each maps to a distinct diagnostic
/// string through error_code_name().
enum class ErrorCode {
  ModeMismatch,
  Zero,
  Degenerate,
  Shape,
  ZeroLambda,
  Precondition,
  NonConst,
  NotSplit,
  NotAdmissible,
  UndecidableGroup,
  CoverMismatch,
  InvalidInput,
  Parse,
  Schema,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ModeMismatch: return "E_MODE_MISMATCH";
    case ErrorCode::Zero: return "E_ZERO";
    case ErrorCode::Degenerate: return "E_DEGENERATE";
    case ErrorCode::Shape: return "E_SHAPE";
    case ErrorCode::ZeroLambda: return "E_ZERO_LAMBDA";
    case ErrorCode::Precondition: return "E_PRECONDITION";
    case ErrorCode::NonConst: return "E_NONCONST";
    case ErrorCode::NotSplit: return "E_NOT_SPLIT";
    case ErrorCode::NotAdmissible: return "E_NOT_ADMISSIBLE";
    case ErrorCode::UndecidableGroup: return "E_UNDECIDABLE_GROUP";
    case ErrorCode::CoverMismatch: return "E_COVER_MISMATCH";
    case ErrorCode::InvalidInput: return "E_INVALID_INPUT";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Schema: return "E_SCHEMA";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace azk
