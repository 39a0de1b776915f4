#pragma once

#include <stdexcept>
#include <string>

namespace minangle {

enum class ErrorCode {
  InvalidArgument,
  AllTermsFiltered,
  EmptyMatrix,
  NonFiniteInput,
  IsPivotColumn,
  ZeroBlock,
  AmbientDimensionMismatch,
  TooFewPoints,
  DegenerateAffinity,
  EmptyInput,
  MissingComponentLabel,
  LengthMismatch,
  Empty,
  InvalidSpec,
  Io,
  Parse,
  Numerical,
};

const char* to_string(ErrorCode code) noexcept;

/// Process exit status for an error: 3 for data problems, 4 for numerical
/// failures, 2 for bad arguments.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minangle
