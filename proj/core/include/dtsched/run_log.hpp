#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtsched/decision.hpp"
#include "dtsched/planning.hpp"
#include "dtsched/pta.hpp"
#include "dtsched/tariff.hpp"

namespace dtsched {

enum class RunOutcome {
  kCompleted,
  kReschedulingFailure,
  kViolated,    // fixed schedule missed a deadline
  kIncomplete,  // fixed schedule ended below demand
};

std::string_view to_string(RunOutcome outcome);
RunOutcome run_outcome_from_string(std::string_view name);

struct StepRecord {
  std::size_t index = 0;
  Hours grid_start = 0.0;
  Hours grid_end = 0.0;
  PartCount state_before = 0;
  PartCount state_after = 0;
  BatchSize event = 0;
  double energy_mwh = 0.0;
  double cost = 0.0;
  std::optional<DecisionRecord> decision;

  bool operator==(const StepRecord&) const = default;
};

struct RunMeta {
  std::string controller;  // "llp" or "fixed"
  MachineSpec machine;
  OrderSpec order;
  std::string tariff_digest;  // of the schedule in force at T0
  std::optional<LookaheadConfig> config;
  Hours start_time = 0.0;

  bool operator==(const RunMeta&) const = default;
};

struct RunTotals {
  double energy_mwh = 0.0;
  double cost = 0.0;
  PartCount parts = 0;
  Hours end_time = 0.0;

  bool operator==(const RunTotals&) const = default;
};

struct AppliedDisturbance {
  Disturbance disturbance;
  Hours applied_at = 0.0;  // decision boundary at which it took effect

  bool operator==(const AppliedDisturbance&) const = default;
};

struct RunLog {
  RunMeta meta;
  std::vector<StepRecord> steps;
  RunTotals totals;
  RunOutcome outcome = RunOutcome::kCompleted;
  std::string outcome_detail;
  std::vector<AppliedDisturbance> disturbances;
  PriceSchedule prices;  // effective schedule after every splice

  ScheduleString schedule() const;
  bool operator==(const RunLog&) const = default;
};

std::string digest_hex(const PriceSchedule& sched);

RunMeta make_meta(std::string controller, const PtaModel& model, const PriceSchedule& initial_prices,
                  std::optional<LookaheadConfig> config);

// Totals as the fold of the step records.
RunTotals fold_totals(const std::vector<StepRecord>& steps, PartCount initial_state, Hours initial_time);

}  // namespace dtsched
