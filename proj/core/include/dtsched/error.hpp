#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtsched {

enum class ErrorCode {
  kSpecInvalid,
  kInvalidEvent,
  kCapacityExceeded,
  kConsecutiveIdle,
  kOutOfCoverage,
  kNonpositiveInterval,
  kInvalidSchedule,
  kGapAtSplice,
  kNotMarked,
  kZeroDenominator,
  kReschedulingFailure,
  kInfeasible,
  kInfeasibleDeadline,
  kRetroactiveUpdate,
  kMismatchedFixtures,
  kNotFound,
  kIoFailure,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a typed code so callers (the
// CLI in particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the leading code name.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace dtsched
