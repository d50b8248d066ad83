#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altprod {

enum class ErrorCode {
  NonSquare,
  Singular,
  ParseError,
  ShapeError,
  EmptyAlphabet,
  DuplicateMatrix,
  IndexOutOfRange,
  LengthMismatch,
  BudgetExceeded,
  HypothesisViolated,
  NotFoundWithinCap,
  VerificationFailed,
  AlphaTooLarge,
  DeterminantNotOne,
  GammaIsOne,
  ZeroVector,
  MaxStepsExceeded,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace altprod
