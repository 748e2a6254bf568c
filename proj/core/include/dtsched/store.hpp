#pragma once

// Append-only history of run logs and tariffs: one JSON document per line,
// one file per record kind (runs.jsonl, tariffs.jsonl) under a data
// directory. Identifiers are shared across kinds and strictly increasing.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtsched/run_log.hpp"
#include "dtsched/tariff.hpp"

namespace dtsched {

enum class RecordKind { kRun, kTariff };

std::string_view to_string(RecordKind kind);
RecordKind record_kind_from_string(std::string_view name);

struct HistoryRecord {
  std::uint64_t id = 0;
  std::string created;  // ISO-8601 UTC, e.g. 2026-10-17T08:00:00Z
  RecordKind kind = RecordKind::kRun;
  nlohmann::json payload;
};

// Inclusive bounds on `created`, compared as ISO-8601 UTC strings.
struct TimeRange {
  std::optional<std::string> from;
  std::optional<std::string> to;
};

std::string utc_now_iso8601();

class HistoryStore {
 public:
  using Clock = std::function<std::string()>;

  explicit HistoryStore(std::filesystem::path data_dir, Clock clock = utc_now_iso8601);

  std::uint64_t append(RecordKind kind, const nlohmann::json& payload);
  std::uint64_t append_run(const RunLog& log);
  std::uint64_t append_tariff(const PriceSchedule& prices);

  // Throws NotFound for unknown ids.
  HistoryRecord load(std::uint64_t id) const;
  RunLog load_run(std::uint64_t id) const;
  PriceSchedule load_tariff(std::uint64_t id) const;

  std::vector<std::uint64_t> list(std::optional<RecordKind> kind = std::nullopt, const TimeRange& range = {}) const;

  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  std::filesystem::path file_for(RecordKind kind) const;
  // Complete lines only: a trailing fragment from an in-progress write is skipped.
  std::vector<HistoryRecord> read_all(RecordKind kind) const;

  std::filesystem::path data_dir_;
  Clock clock_;
  std::uint64_t last_id_ = 0;
};

}  // namespace dtsched
