#pragma once

#include <stdexcept>
#include <string>

namespace gaplcp {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  RayTermination,
  PivotLimitExceeded,
  NumericalBreakdown,
  MaxIterationsExceeded,
  InvariantViolation,
  DimensionTooLarge,
  OutOfDomain,
  DuplicatePositions,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so callers
// (the CLI in particular) can map outcomes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gaplcp
