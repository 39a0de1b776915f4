#include "minangle/error.hpp"

namespace minangle {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllTermsFiltered: return "AllTermsFiltered";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::IsPivotColumn: return "IsPivotColumn";
    case ErrorCode::ZeroBlock: return "ZeroBlock";
    case ErrorCode::AmbientDimensionMismatch: return "AmbientDimensionMismatch";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateAffinity: return "DegenerateAffinity";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingComponentLabel: return "MissingComponentLabel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Numerical: return "Numerical";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSpec:
      return 2;
    case ErrorCode::NonFiniteInput:
    case ErrorCode::DegenerateAffinity:
    case ErrorCode::Numerical:
      return 4;
    default:
      return 3;
  }
}

}  // namespace minangle
