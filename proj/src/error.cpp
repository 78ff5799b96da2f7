#include "eqdiv/error.hpp"

namespace eqdiv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::MalformedBreakpoints: return "MalformedBreakpoints";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ReversedInterval: return "ReversedInterval";
    case ErrorCode::NegativeTarget: return "NegativeTarget";
    case ErrorCode::InvalidV: return "InvalidV";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::InvalidCuts: return "InvalidCuts";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooManyPlayers: return "TooManyPlayers";
    case ErrorCode::ResolutionTooFine: return "ResolutionTooFine";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace eqdiv
