#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subguard {

enum class ErrorCode {
  // Scenario validation (CLI exit code 2).
  ParseError,
  DimensionMismatch,
  ZeroNormal,
  Assumption1Violated,
  Assumption2Violated,
  Assumption3Violated,
  // Geometric preconditions.
  CoincidentPlayers,
  CoincidentDefenders,
  CoincidentPoints,
  DegeneratePair,
  NotCanonical,
  AttackerNotInPlay,
  // Solver preconditions and numerics (CLI exit code 3).
  NotInDWS,
  NotOnBarrier,
  NumericalDegeneracy,
  InvalidPolicy,
  InvalidArgument,
  EmptyGrid,
  BudgetExceeded,
  DimensionCap,
  EmptyIntersection,
  NoWinningPoint,
  NotOnTargetHyperplane,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by a malformed or inadmissible scenario.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace subguard
