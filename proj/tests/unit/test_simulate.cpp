#include <gtest/gtest.h>

#include <random>

#include "dtsched/error.hpp"
#include "dtsched/simulate.hpp"
#include "oracles.hpp"

using namespace dtsched;
using dtsched::testkit::case_machine;
using dtsched::testkit::case_order;
using dtsched::testkit::flat_prices;
using dtsched::testkit::two_tier_prices;

namespace {

void expect_log_invariants(const RunLog& log) {
  double energy = 0.0;
  double cost = 0.0;
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const auto& s = log.steps[i];
    EXPECT_GT(s.grid_end, s.grid_start);
    if (i > 0) {
      EXPECT_DOUBLE_EQ(s.grid_start, log.steps[i - 1].grid_end);
      EXPECT_EQ(s.state_before, log.steps[i - 1].state_after);
    }
    EXPECT_EQ(s.state_after, s.state_before + s.event);
    const double power = log.meta.machine.power_mw[static_cast<std::size_t>(s.event)];
    const double dur = s.event == 0 ? log.meta.machine.setup_time : log.meta.machine.processing_time;
    EXPECT_NEAR(s.energy_mwh, power * dur, 1e-12);
    energy += power * dur;
    cost += s.cost;
  }
  EXPECT_NEAR(log.totals.energy_mwh, energy, 1e-9);
  EXPECT_NEAR(log.totals.cost, cost, 1e-9);
  EXPECT_EQ(log.totals.parts, log.steps.empty() ? 0 : log.steps.back().state_after);
}

}  // namespace

TEST(RunLlp, CaseFixtureCompletes) {
  const RunLog log = run_llp(case_machine(), case_order(), two_tier_prices(), LookaheadConfig{});
  EXPECT_EQ(log.outcome, RunOutcome::kCompleted);
  EXPECT_GE(log.totals.parts, 7);
  EXPECT_LE(log.totals.parts, 8);
  EXPECT_LE(log.totals.end_time, 13.0 + kTimeTolerance);
  EXPECT_EQ(log.meta.controller, "llp");
  ASSERT_TRUE(log.meta.config);
  for (const auto& s : log.steps) EXPECT_TRUE(s.decision.has_value());
  expect_log_invariants(log);
}

TEST(RunLlp, ImpossibleOrderIsReschedulingFailure) {
  OrderSpec o;
  o.start_time = 8.0;
  o.milestones = {{7, 2.0}};
  const RunLog log = run_llp(case_machine(), o, flat_prices(50.0), LookaheadConfig{});
  EXPECT_EQ(log.outcome, RunOutcome::kReschedulingFailure);
  EXPECT_FALSE(log.outcome_detail.empty());
}

TEST(RunLlp, ZeroDemandIsEmpty) {
  OrderSpec o;
  o.start_time = 8.0;
  o.demand = 0;
  const RunLog log = run_llp(case_machine(), o, flat_prices(50.0), LookaheadConfig{});
  EXPECT_EQ(log.outcome, RunOutcome::kCompleted);
  EXPECT_TRUE(log.steps.empty());
  EXPECT_DOUBLE_EQ(log.totals.end_time, 8.0);
}

TEST(RunFixed, Benchmark) {
  const RunLog log = run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2, 2, 1});
  EXPECT_EQ(log.outcome, RunOutcome::kCompleted);
  EXPECT_EQ(log.totals.parts, 7);
  EXPECT_DOUBLE_EQ(log.totals.end_time, 12.0);
  EXPECT_NEAR(log.totals.energy_mwh, 3.8, 1e-12);
  EXPECT_EQ(log.meta.controller, "fixed");
  expect_log_invariants(log);
}

TEST(RunFixed, CaseScheduleCostsMatchOracle) {
  const std::vector<int> s{2, 2, 1, 2};
  const RunLog log = run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2, 1, 2});
  EXPECT_EQ(log.outcome, RunOutcome::kCompleted);
  EXPECT_NEAR(log.totals.energy_mwh, 3.8, 1e-12);
  EXPECT_NEAR(log.totals.cost,
              dtsched::testkit::oracle_energy_cost(case_machine(), case_order(), s, two_tier_prices()), 1e-9);
  EXPECT_NEAR(log.totals.cost, 272.0, 1e-9);
}

TEST(RunFixed, ViolationIsFlaggedButExecuted) {
  const RunLog log = run_fixed(case_machine(), case_order(), two_tier_prices(), {1, 2, 2, 2});
  EXPECT_EQ(log.outcome, RunOutcome::kViolated);
  EXPECT_EQ(log.steps.size(), 4u);
  EXPECT_NE(log.outcome_detail.find("10"), std::string::npos) << log.outcome_detail;
}

TEST(RunFixed, ShortScheduleIsIncomplete) {
  const RunLog log = run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2});
  EXPECT_EQ(log.outcome, RunOutcome::kIncomplete);
}

TEST(RunFixed, StructuralErrorsThrow) {
  EXPECT_THROW(run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 0, 0, 2}), Error);
  EXPECT_THROW(run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2, 2, 2, 2}), Error);
}

TEST(SimulateProperties, ReplayReproducesLlpCosts) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto prices = dtsched::testkit::random_prices(rng, 8.0, 20.0);
    LookaheadConfig cfg;
    cfg.window = 1 + trial % 3;
    const RunLog llp = run_llp(case_machine(), case_order(), prices, cfg);
    if (llp.outcome != RunOutcome::kCompleted) continue;
    const RunLog replay = run_fixed(case_machine(), case_order(), prices, llp.schedule());
    ASSERT_EQ(replay.steps.size(), llp.steps.size());
    for (std::size_t i = 0; i < llp.steps.size(); ++i) {
      EXPECT_EQ(replay.steps[i].cost, llp.steps[i].cost);
      EXPECT_EQ(replay.steps[i].grid_start, llp.steps[i].grid_start);
    }
    EXPECT_EQ(replay.totals, llp.totals);
    expect_log_invariants(llp);
  }
}

TEST(Compare, Savings) {
  const RunLog a = run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2, 2, 1});
  EXPECT_DOUBLE_EQ(compare(a, a).savings_percent, 0.0);

  RunLog cheap = a;
  RunLog dear = a;
  cheap.totals.cost = 97.45;
  dear.totals.cost = 100.0;
  EXPECT_NEAR(compare(cheap, dear).savings_percent, 2.55, 1e-12);

  const RunLog llp = run_llp(case_machine(), case_order(), two_tier_prices(), LookaheadConfig{});
  const auto report = compare(llp, a, "llp", "benchmark");
  EXPECT_GT(report.savings_percent, 0.0);
  EXPECT_EQ(report.runs.size(), 2u);
  EXPECT_EQ(report.timeline.size(), 2u);
}

TEST(Compare, MismatchedFixtures) {
  const RunLog a = run_fixed(case_machine(), case_order(), two_tier_prices(), {2, 2, 2, 1});
  const RunLog b = run_fixed(case_machine(), case_order(), flat_prices(50.0), {2, 2, 2, 1});
  try {
    compare(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatchedFixtures);
  }
  auto o = case_order();
  o.milestones.back().deadline = 6.0;
  const RunLog c = run_fixed(case_machine(), o, two_tier_prices(), {2, 2, 2, 1});
  EXPECT_THROW(compare(a, c), Error);
}

TEST(Timeline, HourlyBuckets) {
  const RunLog llp = run_llp(case_machine(), case_order(), two_tier_prices(), LookaheadConfig{});
  const auto rows = hourly_timeline(llp);
  ASSERT_FALSE(rows.empty());
  EXPECT_DOUBLE_EQ(rows.front().hour, 8.0);
  EXPECT_NEAR(rows.back().cumulative_cost, llp.totals.cost, 1e-9);
  double energy = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    energy += rows[i].power_mw;
    if (i > 0) {
      EXPECT_GE(rows[i].cumulative_cost, rows[i - 1].cumulative_cost);
    }
  }
  EXPECT_NEAR(energy, llp.totals.energy_mwh, 1e-9);
  EXPECT_DOUBLE_EQ(rows.front().price_per_mwh, 100.0);
  EXPECT_DOUBLE_EQ(rows.back().price_per_mwh, 40.0);
}

TEST(Timeline, Csv) {
  std::vector<TimelineRow> rows{{8.0, 1.0, 100.0, 100.0}, {9.0, 0.9, 100.0, 190.0}};
  EXPECT_EQ(timeline_csv(rows), "hour,power_mw,price_per_mwh,cumulative_cost\n8,1,100,100\n9,0.9,100,190\n");
  EXPECT_EQ(timeline_csv({}), "hour,power_mw,price_per_mwh,cumulative_cost\n");
}
