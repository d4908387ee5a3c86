#include "cutlab/error.hpp"

namespace cutlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonIncreasingEndpoints: return "NonIncreasingEndpoints";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::IntervalCrossesCut: return "IntervalCrossesCut";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OrderingViolated: return "OrderingViolated";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::OnSupport: return "OnSupport";
    case ErrorCode::InconsistentFermiLevels: return "InconsistentFermiLevels";
    case ErrorCode::NoSecondWell: return "NoSecondWell";
    case ErrorCode::NotBracketed: return "NotBracketed";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::EvenOrderZero: return "EvenOrderZero";
    case ErrorCode::BelowCritical: return "BelowCritical";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::Collision: return "Collision";
    case ErrorCode::MismatchedModel: return "MismatchedModel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace cutlab
