#include "subguard/error.hpp"

namespace subguard {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::Assumption1Violated: return "Assumption1Violated";
    case ErrorCode::Assumption2Violated: return "Assumption2Violated";
    case ErrorCode::Assumption3Violated: return "Assumption3Violated";
    case ErrorCode::CoincidentPlayers: return "CoincidentPlayers";
    case ErrorCode::CoincidentDefenders: return "CoincidentDefenders";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::AttackerNotInPlay: return "AttackerNotInPlay";
    case ErrorCode::NotInDWS: return "NotInDWS";
    case ErrorCode::NotOnBarrier: return "NotOnBarrier";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::NoWinningPoint: return "NoWinningPoint";
    case ErrorCode::NotOnTargetHyperplane: return "NotOnTargetHyperplane";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ZeroNormal:
    case ErrorCode::Assumption1Violated:
    case ErrorCode::Assumption2Violated:
    case ErrorCode::Assumption3Violated:
      return true;
    default:
      return false;
  }
}

}  // namespace subguard
