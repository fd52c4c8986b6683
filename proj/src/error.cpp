#include "relosc/error.hpp"

namespace relosc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonNegativeOffDiagonal: return "NonNegativeOffDiagonal";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CoefficientMismatch: return "CoefficientMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateSolution: return "DegenerateSolution";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::InconsistentSigns: return "InconsistentSigns";
    case ErrorCode::PairingDisagreement: return "PairingDisagreement";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MarginViolation: return "MarginViolation";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace relosc
