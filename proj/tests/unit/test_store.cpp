#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "dtsched/error.hpp"
#include "dtsched/json_io.hpp"
#include "dtsched/simulate.hpp"
#include "dtsched/store.hpp"
#include "oracles.hpp"

using namespace dtsched;
namespace fs = std::filesystem;

namespace {

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dtsched_store_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Deterministic clock stepping one minute per call.
  HistoryStore::Clock ticking(int start_minute = 0) {
    return [m = start_minute]() mutable {
      char buf[32];
      std::snprintf(buf, sizeof buf, "2026-01-01T10:%02d:00Z", m++);
      return std::string(buf);
    };
  }

  fs::path dir_;
};

RunLog case_log() {
  return run_llp(testkit::case_machine(), testkit::case_order(), testkit::two_tier_prices(), LookaheadConfig{});
}

}  // namespace

TEST_F(StoreTest, IdsStartAtOneAndIncrease) {
  HistoryStore store(dir_, ticking());
  EXPECT_EQ(store.append(RecordKind::kRun, json{{"x", 1}}), 1u);
  EXPECT_EQ(store.append(RecordKind::kTariff, json{{"x", 2}}), 2u);
  EXPECT_EQ(store.append(RecordKind::kRun, json{{"x", 3}}), 3u);
  EXPECT_TRUE(fs::exists(dir_ / "runs.jsonl"));
  EXPECT_TRUE(fs::exists(dir_ / "tariffs.jsonl"));
}

TEST_F(StoreTest, ReopenContinuesNumbering) {
  {
    HistoryStore store(dir_, ticking());
    store.append(RecordKind::kRun, json{{"x", 1}});
    store.append(RecordKind::kTariff, json{{"x", 2}});
  }
  HistoryStore reopened(dir_, ticking(10));
  EXPECT_EQ(reopened.append(RecordKind::kRun, json{{"x", 3}}), 3u);
  EXPECT_EQ(reopened.load(2).payload, (json{{"x", 2}}));
}

TEST_F(StoreTest, LoadMissingIsNotFound) {
  HistoryStore store(dir_);
  try {
    store.load(999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST_F(StoreTest, RunLogRoundTripIsLossless) {
  const RunLog log = case_log();
  std::uint64_t id = 0;
  {
    HistoryStore store(dir_, ticking());
    id = store.append_run(log);
  }
  const HistoryStore store(dir_);
  const auto rec = store.load(id);
  EXPECT_EQ(rec.kind, RecordKind::kRun);
  EXPECT_EQ(rec.created, "2026-01-01T10:00:00Z");
  EXPECT_EQ(rec.payload.dump(), json(log).dump());
  const RunLog back = store.load_run(id);
  EXPECT_EQ(back, log);
  EXPECT_EQ(dump_run_log(back), dump_run_log(log));
}

TEST_F(StoreTest, TariffRoundTrip) {
  HistoryStore store(dir_);
  const auto id = store.append_tariff(testkit::two_tier_prices());
  EXPECT_EQ(store.load_tariff(id), testkit::two_tier_prices());
  EXPECT_THROW(store.load_run(id), Error);
}

TEST_F(StoreTest, ListFiltersByKindAndInclusiveRange) {
  HistoryStore store(dir_, ticking());
  store.append(RecordKind::kRun, json(1));     // 10:00
  store.append(RecordKind::kTariff, json(2));  // 10:01
  store.append(RecordKind::kRun, json(3));     // 10:02
  store.append(RecordKind::kRun, json(4));     // 10:03
  EXPECT_EQ(store.list(), (std::vector<std::uint64_t>{1, 2, 3, 4}));
  EXPECT_EQ(store.list(RecordKind::kRun), (std::vector<std::uint64_t>{1, 3, 4}));
  EXPECT_EQ(store.list(RecordKind::kTariff), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(store.list(std::nullopt, {"2026-01-01T10:01:00Z", "2026-01-01T10:02:00Z"}),
            (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(store.list(RecordKind::kRun, {"2026-01-01T10:02:00Z", std::nullopt}), (std::vector<std::uint64_t>{3, 4}));
}

TEST_F(StoreTest, EmptyStoreListsNothing) {
  const HistoryStore store(dir_);
  EXPECT_TRUE(store.list().empty());
}

TEST_F(StoreTest, TrailingPartialLineIsIgnored) {
  {
    HistoryStore store(dir_, ticking());
    store.append(RecordKind::kRun, json{{"x", 1}});
  }
  {
    std::ofstream out(dir_ / "runs.jsonl", std::ios::app);
    out << R"({"id":2,"created":"2026-01-01)";
  }
  HistoryStore store(dir_, ticking(5));
  EXPECT_EQ(store.list(), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(store.append(RecordKind::kRun, json{{"x", 2}}), 2u);
  EXPECT_EQ(store.load(2).payload, (json{{"x", 2}}));
  EXPECT_EQ(store.list(), (std::vector<std::uint64_t>{1, 2}));
}

TEST(UtcNow, Iso8601Shape) {
  const auto now = utc_now_iso8601();
  ASSERT_EQ(now.size(), 20u);
  EXPECT_EQ(now[4], '-');
  EXPECT_EQ(now[10], 'T');
  EXPECT_EQ(now.back(), 'Z');
}
