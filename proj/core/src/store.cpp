#include "dtsched/store.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>

#include "dtsched/error.hpp"
#include "dtsched/json_io.hpp"

namespace dtsched {

std::string_view to_string(RecordKind kind) {
  return kind == RecordKind::kRun ? "run" : "tariff";
}

RecordKind record_kind_from_string(std::string_view name) {
  if (name == "run") return RecordKind::kRun;
  if (name == "tariff") return RecordKind::kTariff;
  throw Error(ErrorCode::kParseError, "unknown record kind '" + std::string(name) + "'");
}

std::string utc_now_iso8601() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

HistoryStore::HistoryStore(std::filesystem::path data_dir, Clock clock)
    : data_dir_(std::move(data_dir)), clock_(std::move(clock)) {
  std::error_code ec;
  std::filesystem::create_directories(data_dir_, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create data directory " + data_dir_.string() + ": " + ec.message());
  for (auto kind : {RecordKind::kRun, RecordKind::kTariff}) {
    for (const auto& rec : read_all(kind)) last_id_ = std::max(last_id_, rec.id);
  }
}

std::filesystem::path HistoryStore::file_for(RecordKind kind) const {
  return data_dir_ / (kind == RecordKind::kRun ? "runs.jsonl" : "tariffs.jsonl");
}

std::vector<HistoryRecord> HistoryStore::read_all(RecordKind kind) const {
  std::vector<HistoryRecord> out;
  const auto path = file_for(kind);
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (true) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) break;
    ++line_no;
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("id").get<std::uint64_t>(), j.at("created").get<std::string>(),
                     record_kind_from_string(j.at("kind").get<std::string>()), j.at("payload")});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace {

// Drops an unterminated final line left by an interrupted writer so the next
// record starts on a line of its own.
void drop_partial_tail(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return;
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.back() == '\n') return;
  const auto nl = text.rfind('\n');
  std::filesystem::resize_file(path, nl == std::string::npos ? 0 : nl + 1, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot trim partial record in " + path.string() + ": " + ec.message());
}

}  // namespace

std::uint64_t HistoryStore::append(RecordKind kind, const nlohmann::json& payload) {
  const std::uint64_t id = last_id_ + 1;
  const nlohmann::json line{{"id", id}, {"created", clock_()}, {"kind", std::string(to_string(kind))}, {"payload", payload}};
  const auto path = file_for(kind);
  drop_partial_tail(path);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for append");
  out << line.dump() << '\n';
  if (!out.flush()) throw Error(ErrorCode::kIoFailure, "append to " + path.string() + " failed");
  last_id_ = id;
  return id;
}

std::uint64_t HistoryStore::append_run(const RunLog& log) { return append(RecordKind::kRun, nlohmann::json(log)); }

std::uint64_t HistoryStore::append_tariff(const PriceSchedule& prices) {
  return append(RecordKind::kTariff, nlohmann::json(prices));
}

HistoryRecord HistoryStore::load(std::uint64_t id) const {
  for (auto kind : {RecordKind::kRun, RecordKind::kTariff}) {
    for (auto& rec : read_all(kind)) {
      if (rec.id == id) return rec;
    }
  }
  throw Error(ErrorCode::kNotFound, "no record with id " + std::to_string(id) + " in " + data_dir_.string());
}

RunLog HistoryStore::load_run(std::uint64_t id) const {
  const auto rec = load(id);
  if (rec.kind != RecordKind::kRun) throw Error(ErrorCode::kNotFound, "record " + std::to_string(id) + " is not a run");
  return rec.payload.get<RunLog>();
}

PriceSchedule HistoryStore::load_tariff(std::uint64_t id) const {
  const auto rec = load(id);
  if (rec.kind != RecordKind::kTariff) {
    throw Error(ErrorCode::kNotFound, "record " + std::to_string(id) + " is not a tariff");
  }
  return rec.payload.get<PriceSchedule>();
}

std::vector<std::uint64_t> HistoryStore::list(std::optional<RecordKind> kind, const TimeRange& range) const {
  std::vector<std::uint64_t> ids;
  for (auto k : {RecordKind::kRun, RecordKind::kTariff}) {
    if (kind && *kind != k) continue;
    for (const auto& rec : read_all(k)) {
      if (range.from && rec.created < *range.from) continue;
      if (range.to && rec.created > *range.to) continue;
      ids.push_back(rec.id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace dtsched
