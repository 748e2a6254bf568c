#pragma once

// Decision maker: schedule costs, the limited look-ahead controller and the
// two reference schedules it is compared against (exhaustive open-loop
// optimum and the utilisation-first benchmark).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtsched/planning.hpp"
#include "dtsched/pta.hpp"
#include "dtsched/tariff.hpp"

namespace dtsched {

struct RunLog;

enum class TieBreak {
  kLargestFirstEvent,     // larger first event, then lexicographically larger string
  kLexicographicLargest,  // lexicographically larger string
};

std::string_view to_string(TieBreak tb);
TieBreak tie_break_from_string(std::string_view name);

struct LookaheadConfig {
  int window = 2;
  bool prune_infeasible_futures = true;
  TieBreak tie_break = TieBreak::kLargestFirstEvent;
  // When some valid candidate completes the order inside the window, only
  // completing candidates compete. Their J' then equals the remaining part
  // of J, which keeps a full-horizon window consistent with the open-loop
  // optimum.
  bool prefer_completion = true;

  bool operator==(const LookaheadConfig&) const = default;
};

enum class CandidateStatus {
  kValid,
  kConstraintViolation,
  kConsecutiveIdle,
  kZeroDenominator,
  kCapacity,
  kOutOfCoverage,
  kInfeasibleFuture,
};

std::string_view to_string(CandidateStatus status);
CandidateStatus candidate_status_from_string(std::string_view name);

struct Candidate {
  ScheduleString string;
  PartCount terminal_state = 0;
  std::optional<double> cost;  // present iff status == kValid
  CandidateStatus status = CandidateStatus::kValid;

  bool valid() const { return status == CandidateStatus::kValid; }
  bool operator==(const Candidate&) const = default;
};

struct DecisionRecord {
  PartCount at_state = 0;
  Hours at_global = 0.0;
  std::vector<Candidate> candidates;
  std::size_t chosen_index = 0;
  BatchSize chosen_event = 0;

  const Candidate& chosen() const { return candidates.at(chosen_index); }
  bool operator==(const DecisionRecord&) const = default;
};

// True when `a` beats `b` under the tie-break alone (costs already equal).
bool tie_break_prefers(TieBreak tb, const ScheduleString& a, const ScheduleString& b);

// Relative tolerance under which two costs count as a tie.
inline constexpr double kCostTieTolerance = 1e-9;
bool costs_tie(double a, double b);

// J(s) = TP_s / d + (val(delta(q0, s)) - d). Throws NotMarked when s does not
// end in a marked state.
double cost_J(const PtaModel& model, const ScheduleString& s, const PriceSchedule& sched, Hours start_global = 0.0);

int indicator_xi(const PtaModel& model, PartCount terminal_state);

// J'(s) over a window string starting at `from_state`. TP_s covers the
// window events only; the denominator uses the cumulative part count of the
// terminal state (or d once it is marked). Throws ZeroDenominator.
double cost_J_prime(const PtaModel& model, PartCount from_state, const ScheduleString& s,
                    const PriceSchedule& sched, Hours start_global);

// Every non-empty string of length <= window from `from_state`, without
// adjacent idles and without extending past a marked state. Depth-first,
// events ascending.
std::vector<ScheduleString> lookahead_tree(const PtaModel& model, PartCount from_state,
                                           std::optional<BatchSize> last_event, int window);

// One receding-horizon decision. Throws ReschedulingFailure when the window
// contains no valid candidate.
DecisionRecord llp_step(const PtaModel& model, PartCount from_state, std::optional<BatchSize> last_event,
                        Hours global_clock, const PriceSchedule& sched, const LookaheadConfig& cfg);

// Closed loop from q0 until a marked state is reached. A rescheduling failure
// ends the run early and is recorded in the log outcome.
RunLog llp_run(const PtaModel& model, const PriceSchedule& sched, const LookaheadConfig& cfg,
               const std::vector<Disturbance>& disturbances = {});

// Same loop, resumed from an arbitrary runtime context.
RunLog llp_run(RuntimeContext ctx, const LookaheadConfig& cfg);

struct OpenLoopResult {
  ScheduleString schedule;
  double cost = 0.0;         // J
  double energy_cost = 0.0;  // TP
};

// Exhaustive depth-first branch and bound over the marked language. Throws
// Infeasible when no string reaches a marked state within the constraints.
OpenLoopResult open_loop_optimal(const PtaModel& model, const PriceSchedule& sched, Hours start_global = 0.0,
                                 TieBreak tie_break = TieBreak::kLargestFirstEvent);

// Full batches until fewer than H parts remain, then one remainder batch.
// Throws InfeasibleDeadline when the result misses a milestone.
ScheduleString benchmark_schedule(const PtaModel& model);

}  // namespace dtsched
