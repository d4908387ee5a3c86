#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutlab {

enum class ErrorCode {
  NonIncreasingEndpoints,
  InsufficientOrder,
  EmptyInterval,
  IntervalCrossesCut,
  NoConvergence,
  OrderingViolated,
  NegativeDensity,
  OnSupport,
  InconsistentFermiLevels,
  NoSecondWell,
  NotBracketed,
  NotCritical,
  EvenOrderZero,
  BelowCritical,
  InsufficientData,
  Collision,
  MismatchedModel,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on it (the sweep uses NegativeDensity as a phase signal).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cutlab
