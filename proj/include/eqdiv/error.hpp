#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqdiv {

enum class ErrorCode {
  ZeroMass,
  MalformedBreakpoints,
  NegativeValue,
  OutOfRange,
  ReversedInterval,
  NegativeTarget,
  InvalidV,
  InvalidInstance,
  InvalidCuts,
  NotOnSphere,
  DimensionMismatch,
  TooManyPlayers,
  ResolutionTooFine,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported through this exception; `code()` is
/// stable and meant for programmatic dispatch, `what()` for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eqdiv
