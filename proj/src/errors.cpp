#include "altprod/errors.hpp"

namespace altprod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::DuplicateMatrix: return "DuplicateMatrix";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotFoundWithinCap: return "NotFoundWithinCap";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorCode::DeterminantNotOne: return "DeterminantNotOne";
    case ErrorCode::GammaIsOne: return "GammaIsOne";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace altprod
