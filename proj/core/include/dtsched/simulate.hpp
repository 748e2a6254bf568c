#pragma once

#include <map>
#include <string>
#include <vector>

#include "dtsched/decision.hpp"
#include "dtsched/planning.hpp"
#include "dtsched/run_log.hpp"

namespace dtsched {

// Closed-loop run of the look-ahead controller. Rescheduling failures are
// reported through RunLog::outcome, not thrown.
RunLog run_llp(const MachineSpec& machine, const OrderSpec& order, const PriceSchedule& prices,
               const LookaheadConfig& cfg, const std::vector<Disturbance>& disturbances = {});

// Executes `s` verbatim. Missed deadlines mark the outcome Violated and a
// string that stops below demand is Incomplete; both still run to the end.
RunLog run_fixed(const MachineSpec& machine, const OrderSpec& order, const PriceSchedule& prices,
                 const ScheduleString& s);

struct TimelineRow {
  double hour = 0.0;            // start of the hour bucket (grid time)
  double power_mw = 0.0;        // mean power over the bucket
  double price_per_mwh = 0.0;   // time-weighted mean price over the bucket
  double cumulative_cost = 0.0; // cost accrued by the end of the bucket

  bool operator==(const TimelineRow&) const = default;
};

std::vector<TimelineRow> hourly_timeline(const RunLog& log);
std::string timeline_csv(const std::vector<TimelineRow>& rows);

struct ComparisonReport {
  std::string name_a;
  std::string name_b;
  double cost_a = 0.0;
  double cost_b = 0.0;
  // (cost_b - cost_a) / cost_b * 100: positive when run a is cheaper.
  double savings_percent = 0.0;
  std::map<std::string, RunLog> runs;
  std::map<std::string, std::vector<TimelineRow>> timeline;
};

// Throws MismatchedFixtures unless both runs share machine, order and tariff.
ComparisonReport compare(const RunLog& a, const RunLog& b, std::string name_a = "a", std::string name_b = "b");

}  // namespace dtsched
