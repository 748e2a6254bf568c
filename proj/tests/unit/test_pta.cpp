#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "dtsched/error.hpp"
#include "dtsched/pta.hpp"
#include "oracles.hpp"

using namespace dtsched;
using dtsched::testkit::case_machine;
using dtsched::testkit::case_order;

namespace {

PtaModel case_model() { return PtaModel(case_machine(), case_order()); }

PtaModel wide_model() {
  MachineSpec m = case_machine();
  m.capacity = 3;
  m.power_mw = {0.5, 0.8, 1.0, 1.2};
  OrderSpec o;
  o.start_time = 0.0;
  o.milestones = {{7, 10.0}};
  return PtaModel(m, o);
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dtsched::Error thrown";
  return ErrorCode::kParseError;
}

ScheduleString random_string(std::mt19937_64& rng, int capacity, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> ev(0, capacity);
  ScheduleString s;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s.push_back(ev(rng));
  return s;
}

}  // namespace

TEST(MachineSpec, CaseMachineIsValid) { EXPECT_TRUE(validate(case_machine()).empty()); }

TEST(MachineSpec, RejectsEachBrokenInvariant) {
  auto m = case_machine();
  m.capacity = 0;
  m.power_mw = {0.5};
  EXPECT_FALSE(validate(m).empty());

  m = case_machine();
  m.allocated_inventory = 4;
  EXPECT_FALSE(validate(m).empty());

  m = case_machine();
  m.power_mw = {0.5, 1.0, 0.8};
  EXPECT_FALSE(validate(m).empty());

  m = case_machine();
  m.power_mw = {0.5, 0.8};
  EXPECT_FALSE(validate(m).empty());

  m = case_machine();
  m.setup_time = 0.0;
  EXPECT_FALSE(validate(m).empty());

  m = case_machine();
  m.processing_time = -1.0;
  EXPECT_FALSE(validate(m).empty());
}

TEST(OrderSpec, MilestonesMustIncrease) {
  auto o = case_order();
  o.milestones = {{7, 5.0}, {2, 1.0}};
  EXPECT_FALSE(validate(o).empty());
  o.milestones = {{2, 5.0}, {7, 5.0}};
  EXPECT_FALSE(validate(o).empty());
  EXPECT_EQ(case_order().total_demand(), 7);
}

TEST(PtaModel, InvalidSpecsThrowSpecInvalid) {
  auto o = case_order();
  o.milestones = {{7, 5.0}, {2, 1.0}};
  EXPECT_EQ(code_of([&] { PtaModel(case_machine(), o); }), ErrorCode::kSpecInvalid);
}

TEST(PtaModel, CaseStructure) {
  const auto model = case_model();
  EXPECT_EQ(model.demand(), 7);
  EXPECT_EQ(model.max_state(), 8);
  EXPECT_EQ(model.capacity(), 2);
  EXPECT_EQ(model.initial_state(), 0);
  EXPECT_EQ(model.marked_states(), (std::vector<PartCount>{7, 8}));
  EXPECT_TRUE(model.is_state(8));
  EXPECT_FALSE(model.is_state(9));
  EXPECT_TRUE(model.is_event(2));
  EXPECT_FALSE(model.is_event(3));
  ASSERT_EQ(model.constraints().size(), 2u);
  EXPECT_EQ(model.constraints()[0].applies_at, 2);
  EXPECT_DOUBLE_EQ(model.constraints()[0].bound, 1.0);
}

TEST(Delta, Examples) {
  const auto wide = wide_model();
  EXPECT_EQ(delta(wide, 0, {2, 3, 0, 2}), 7);
  const auto model = case_model();
  EXPECT_EQ(delta(model, 5, {0}), 5);
  EXPECT_EQ(delta(model, 0, {}), 0);
}

TEST(Delta, CapacityExceeded) {
  const auto model = case_model();
  EXPECT_EQ(code_of([&] { delta(model, 0, {2, 2, 2, 2, 2}); }), ErrorCode::kCapacityExceeded);
  EXPECT_EQ(code_of([&] { delta(model, 7, {2}); }), ErrorCode::kCapacityExceeded);
}

TEST(EventDuration, Examples) {
  const auto model = case_model();
  EXPECT_DOUBLE_EQ(event_duration(model, 0), 0.2);
  EXPECT_DOUBLE_EQ(event_duration(model, 2), 1.0);
  EXPECT_DOUBLE_EQ(event_duration(model, 1), 1.0);
  EXPECT_EQ(code_of([&] { event_duration(model, 3); }), ErrorCode::kInvalidEvent);
}

TEST(TransitionTimings, Examples) {
  const auto model = case_model();
  auto t = transition_timings(model, 0, 0.0, {2, 2});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t[0].start, 8.0);
  EXPECT_DOUBLE_EQ(t[0].end, 9.0);
  EXPECT_DOUBLE_EQ(t[1].end, 10.0);

  t = transition_timings(model, 0, 0.0, {2, 0});
  EXPECT_DOUBLE_EQ(t[1].start, 9.0);
  EXPECT_NEAR(t[1].end, 9.2, 1e-12);

  t = transition_timings(model, 0, 0.0, {0, 2});
  EXPECT_NEAR(t[0].end, 8.2, 1e-12);
  EXPECT_NEAR(t[1].start, 8.2, 1e-12);
  EXPECT_NEAR(t[1].end, 9.2, 1e-12);
}

TEST(CheckConstraints, Examples) {
  const auto model = case_model();
  EXPECT_TRUE(check_constraints(model, 0, 0.0, {2, 2, 1, 2}).valid);

  const auto bad = check_constraints(model, 0, 0.0, {1, 2, 2, 2});
  ASSERT_FALSE(bad.valid);
  ASSERT_TRUE(bad.violated.has_value());
  EXPECT_EQ(bad.violated->applies_at, 2);
  ASSERT_TRUE(bad.crossing_time.has_value());
  EXPECT_DOUBLE_EQ(*bad.crossing_time, 10.0);

  EXPECT_EQ(code_of([&] { check_constraints(model, 0, 0.0, {2, 0, 0}); }), ErrorCode::kConsecutiveIdle);
}

TEST(CheckConstraints, PendingIsNotViolated) {
  const auto model = case_model();
  // Idle leaves the 2-part milestone unreached at 0.2 h: still pending.
  EXPECT_TRUE(check_constraints(model, 0, 0.0, {0}).valid);
  // Unreached and elapsed.
  EXPECT_FALSE(check_constraints(model, 0, 0.0, {1, 0}).valid);
}

TEST(CheckConstraints, SettledMilestonesIgnoredFromLaterStates) {
  const auto model = case_model();
  // From q2 only the 7-part deadline (5 h) remains.
  EXPECT_TRUE(check_constraints(model, 2, 1.0, {2, 2, 1}).valid);
  EXPECT_TRUE(check_constraints(model, 2, 1.0, {0, 2, 0, 2, 0, 1}).valid);
  EXPECT_FALSE(check_constraints(model, 2, 2.0, {2, 2, 0, 1}).valid);
}

TEST(FeasibleEvents, Examples) {
  const auto model = case_model();
  EXPECT_EQ(feasible_events(model, 6, 2), (std::vector<BatchSize>{0, 1, 2}));
  EXPECT_EQ(feasible_events(model, 6, 0), (std::vector<BatchSize>{1, 2}));
  EXPECT_TRUE(feasible_events(model, 7, 2).empty());
  EXPECT_TRUE(feasible_events(model, 8, std::nullopt).empty());
}

TEST(IsMarked, Examples) {
  const auto model = case_model();
  EXPECT_TRUE(is_marked(model, 7));
  EXPECT_FALSE(is_marked(model, 6));
  EXPECT_TRUE(is_marked(model, 8));
}

TEST(ScheduleString, ValidateRejectsAdjacentIdles) {
  EXPECT_EQ(code_of([] { ScheduleString{2, 0, 0, 1}.validate(2); }), ErrorCode::kConsecutiveIdle);
  EXPECT_EQ(code_of([] { ScheduleString{2, 3}.validate(2); }), ErrorCode::kInvalidEvent);
  EXPECT_NO_THROW((ScheduleString{0, 2, 0, 2}.validate(2)));
  EXPECT_EQ((ScheduleString{2, 2, 1, 2}.to_string()), "[2,2,1,2]");
}

// Properties over random strings on a capacity-3 model.

TEST(PtaProperties, ConcatenationComposesDelta) {
  const auto model = wide_model();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_string(rng, 3, 3);
    const auto b = random_string(rng, 3, 3);
    if (a.parts() + b.parts() > model.max_state()) continue;
    EXPECT_EQ(delta(model, 0, a.concat(b)), delta(model, delta(model, 0, a), b));
  }
}

TEST(PtaProperties, TimingsTelescopeAndIncrease) {
  const auto model = wide_model();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_string(rng, 3, 6);
    if (s.parts() > model.max_state()) continue;
    const auto t = transition_timings(model, 0, 0.5, s);
    double sum = 0.0;
    for (auto e : s) sum += event_duration(model, e);
    if (s.empty()) continue;
    EXPECT_NEAR(t.back().end, model.start_time() + 0.5 + sum, 1e-9);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_GT(t[i].end, t[i].start);
      if (i > 0) {
        EXPECT_DOUBLE_EQ(t[i].start, t[i - 1].end);
      }
    }
  }
}

TEST(PtaProperties, MarkedLanguageMatchesEnumeration) {
  // Every string of length <= 6 over {0..3} that stays inside Q.
  const auto model = wide_model();
  std::size_t seen = 0;
  std::vector<int> s;
  std::function<void()> walk = [&] {
    ScheduleString str(std::vector<BatchSize>(s.begin(), s.end()));
    int sum = 0;
    for (int e : s) sum += e;
    ++seen;
    EXPECT_EQ(is_marked(model, delta(model, 0, str)), sum >= 7 && sum <= 8);
    if (s.size() == 6) return;
    for (int e = 0; e <= 3; ++e) {
      if (sum + e > model.max_state()) continue;
      s.push_back(e);
      walk();
      s.pop_back();
    }
  };
  walk();
  EXPECT_GT(seen, 1000u);
}

TEST(PtaProperties, ValidStringHasNoViolatedPrefix) {
  const auto model = case_model();
  std::mt19937_64 rng(13);
  int valid_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = random_string(rng, 2, 6);
    if (s.has_consecutive_idle() || s.parts() > model.max_state()) continue;
    if (!check_constraints(model, 0, 0.0, s).valid) continue;
    ++valid_seen;
    for (std::size_t n = 0; n <= s.size(); ++n) EXPECT_TRUE(check_constraints(model, 0, 0.0, s.prefix(n)).valid);
  }
  EXPECT_GT(valid_seen, 10);
}

TEST(PtaProperties, ConsecutiveIdleAlwaysRejected) {
  const auto model = case_model();
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_string(rng, 2, 3);
    const auto b = random_string(rng, 2, 3);
    ScheduleString s = a.concat({0, 0}).concat(b);
    if (s.parts() > model.max_state()) continue;
    EXPECT_TRUE(s.has_consecutive_idle());
    EXPECT_EQ(code_of([&] { check_constraints(model, 0, 0.0, s); }), ErrorCode::kConsecutiveIdle);
  }
}

TEST(EarliestCompletion, FullBatches) {
  const auto model = case_model();
  EXPECT_DOUBLE_EQ(earliest_completion(model, 0, 0.0, 7), 4.0);
  EXPECT_DOUBLE_EQ(earliest_completion(model, 2, 1.0, 7), 4.0);
  EXPECT_DOUBLE_EQ(earliest_completion(model, 7, 4.0, 7), 4.0);
}
