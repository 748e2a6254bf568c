#include "dtsched/run_log.hpp"

#include <cstdio>

#include "dtsched/error.hpp"

namespace dtsched {

std::string_view to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::kCompleted: return "Completed";
    case RunOutcome::kReschedulingFailure: return "ReschedulingFailure";
    case RunOutcome::kViolated: return "Violated";
    case RunOutcome::kIncomplete: return "Incomplete";
  }
  return "Completed";
}

RunOutcome run_outcome_from_string(std::string_view name) {
  for (auto o : {RunOutcome::kCompleted, RunOutcome::kReschedulingFailure, RunOutcome::kViolated,
                 RunOutcome::kIncomplete}) {
    if (to_string(o) == name) return o;
  }
  throw Error(ErrorCode::kParseError, "unknown run outcome '" + std::string(name) + "'");
}

ScheduleString RunLog::schedule() const {
  ScheduleString s;
  for (const auto& step : steps) s.push_back(step.event);
  return s;
}

std::string digest_hex(const PriceSchedule& sched) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(tariff_digest(sched)));
  return buf;
}

RunMeta make_meta(std::string controller, const PtaModel& model, const PriceSchedule& initial_prices,
                  std::optional<LookaheadConfig> config) {
  return RunMeta{std::move(controller), model.machine(), model.order(), digest_hex(initial_prices),
                 std::move(config), model.start_time()};
}

RunTotals fold_totals(const std::vector<StepRecord>& steps, PartCount initial_state, Hours initial_time) {
  RunTotals totals{0.0, 0.0, initial_state, initial_time};
  for (const auto& step : steps) {
    totals.energy_mwh += step.energy_mwh;
    totals.cost += step.cost;
    totals.parts = step.state_after;
    totals.end_time = step.grid_end;
  }
  return totals;
}

}  // namespace dtsched
