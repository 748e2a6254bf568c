#include "dtsched/error.hpp"

namespace dtsched {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kInvalidEvent: return "InvalidEvent";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kConsecutiveIdle: return "ConsecutiveIdle";
    case ErrorCode::kOutOfCoverage: return "OutOfCoverage";
    case ErrorCode::kNonpositiveInterval: return "NonpositiveInterval";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
    case ErrorCode::kGapAtSplice: return "GapAtSplice";
    case ErrorCode::kNotMarked: return "NotMarked";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kReschedulingFailure: return "ReschedulingFailure";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kInfeasibleDeadline: return "InfeasibleDeadline";
    case ErrorCode::kRetroactiveUpdate: return "RetroactiveUpdate";
    case ErrorCode::kMismatchedFixtures: return "MismatchedFixtures";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace dtsched
