#include "dtsched/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dtsched/error.hpp"

namespace dtsched {

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParseError, where + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, where + "." + key + ": " + e.what());
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key, where);
}

std::vector<PriceSegment> parse_segments(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorCode::kParseError, where + ": 'segments' must be an array");
  std::vector<PriceSegment> segments;
  segments.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string seg = "segment " + std::to_string(i);
    segments.push_back({field<double>(arr[i], "start_h", seg), field<double>(arr[i], "end_h", seg),
                        field<double>(arr[i], "price_per_mwh", seg)});
  }
  return segments;
}

json segments_json(const PriceSchedule& p) {
  json arr = json::array();
  for (const auto& s : p.segments()) {
    arr.push_back({{"start_h", s.start}, {"end_h", s.end}, {"price_per_mwh", s.price_per_mwh}});
  }
  return arr;
}

}  // namespace

void to_json(json& j, const MachineSpec& m) {
  j = json{{"capacity", m.capacity},
           {"processing_time_h", m.processing_time},
           {"setup_time_h", m.setup_time},
           {"power_mw", m.power_mw},
           {"inventory_capacity", m.inventory_capacity},
           {"allocated_inventory", m.allocated_inventory}};
}

void from_json(const json& j, MachineSpec& m) {
  const std::string w = "machine";
  m.capacity = field<int>(j, "capacity", w);
  m.processing_time = field<double>(j, "processing_time_h", w);
  m.setup_time = field<double>(j, "setup_time_h", w);
  m.power_mw = field<std::vector<double>>(j, "power_mw", w);
  m.inventory_capacity = field<int>(j, "inventory_capacity", w);
  m.allocated_inventory = field<int>(j, "allocated_inventory", w);
}

void to_json(json& j, const OrderSpec& o) {
  json ms = json::array();
  for (const auto& m : o.milestones) ms.push_back({{"quantity", m.quantity}, {"deadline_h", m.deadline}});
  j = json{{"start_time_h", o.start_time}, {"milestones", ms}};
  if (o.demand) j["total_demand"] = *o.demand;
}

void from_json(const json& j, OrderSpec& o) {
  const std::string w = "order";
  o.start_time = field<double>(j, "start_time_h", w);
  o.milestones.clear();
  const json ms = j.value("milestones", json::array());
  if (!ms.is_array()) throw Error(ErrorCode::kParseError, "order.milestones: must be an array");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string mw = "order.milestones[" + std::to_string(i) + "]";
    o.milestones.push_back({field<int>(ms[i], "quantity", mw), field<double>(ms[i], "deadline_h", mw)});
  }
  o.demand = optional_field<int>(j, "total_demand", w);
}

void to_json(json& j, const PriceSchedule& p) { j = json{{"segments", segments_json(p)}}; }

void from_json(const json& j, PriceSchedule& p) {
  if (!j.is_object() || !j.contains("segments")) {
    throw Error(ErrorCode::kParseError, "prices: missing field 'segments'");
  }
  p = PriceSchedule(parse_segments(j.at("segments"), "prices"));
}

void to_json(json& j, const Disturbance& d) {
  j = json{{"at_h", d.at}};
  if (const auto* t = std::get_if<TariffUpdate>(&d.change)) {
    j["kind"] = "tariff_update";
    j["segments"] = segments_json(t->prices);
  } else {
    j["kind"] = "order_update";
    j["order"] = std::get<OrderUpdate>(d.change).order;
  }
}

void from_json(const json& j, Disturbance& d) {
  const std::string w = "disturbance";
  d.at = field<double>(j, "at_h", w);
  const auto kind = field<std::string>(j, "kind", w);
  if (kind == "tariff_update") {
    if (!j.contains("segments")) throw Error(ErrorCode::kParseError, w + ": missing field 'segments'");
    d.change = TariffUpdate{PriceSchedule(parse_segments(j.at("segments"), w))};
  } else if (kind == "order_update") {
    if (!j.contains("order")) throw Error(ErrorCode::kParseError, w + ": missing field 'order'");
    d.change = OrderUpdate{j.at("order").get<OrderSpec>()};
  } else {
    throw Error(ErrorCode::kParseError, w + ".kind: unknown kind '" + kind + "'");
  }
}

void to_json(json& j, const LookaheadConfig& c) {
  j = json{{"window", c.window},
           {"prune_infeasible_futures", c.prune_infeasible_futures},
           {"tie_break", std::string(to_string(c.tie_break))},
           {"prefer_completion", c.prefer_completion}};
}

void from_json(const json& j, LookaheadConfig& c) {
  const std::string w = "config";
  c.window = field<int>(j, "window", w);
  c.prune_infeasible_futures = field<bool>(j, "prune_infeasible_futures", w);
  c.tie_break = tie_break_from_string(field<std::string>(j, "tie_break", w));
  c.prefer_completion = field<bool>(j, "prefer_completion", w);
}

void to_json(json& j, const ScheduleString& s) { j = s.events(); }

void from_json(const json& j, ScheduleString& s) { s = ScheduleString(j.get<std::vector<BatchSize>>()); }

void to_json(json& j, const Candidate& c) {
  j = json{{"string", c.string},
           {"terminal_state", c.terminal_state},
           {"status", std::string(to_string(c.status))},
           {"cost", c.cost ? json(*c.cost) : json(nullptr)}};
}

void from_json(const json& j, Candidate& c) {
  const std::string w = "candidate";
  c.string = field<ScheduleString>(j, "string", w);
  c.terminal_state = field<int>(j, "terminal_state", w);
  c.status = candidate_status_from_string(field<std::string>(j, "status", w));
  c.cost = optional_field<double>(j, "cost", w);
}

void to_json(json& j, const DecisionRecord& d) {
  j = json{{"at_state", d.at_state},
           {"at_global_h", d.at_global},
           {"candidates", d.candidates},
           {"chosen_index", d.chosen_index},
           {"chosen_event", d.chosen_event}};
}

void from_json(const json& j, DecisionRecord& d) {
  const std::string w = "decision";
  d.at_state = field<int>(j, "at_state", w);
  d.at_global = field<double>(j, "at_global_h", w);
  d.candidates = field<std::vector<Candidate>>(j, "candidates", w);
  d.chosen_index = field<std::size_t>(j, "chosen_index", w);
  d.chosen_event = field<int>(j, "chosen_event", w);
}

void to_json(json& j, const StepRecord& s) {
  j = json{{"index", s.index},
           {"grid_start_h", s.grid_start},
           {"grid_end_h", s.grid_end},
           {"state_before", s.state_before},
           {"state_after", s.state_after},
           {"event", s.event},
           {"energy_mwh", s.energy_mwh},
           {"cost", s.cost}};
  if (s.decision) j["decision"] = *s.decision;
}

void from_json(const json& j, StepRecord& s) {
  const std::string w = "step";
  s.index = field<std::size_t>(j, "index", w);
  s.grid_start = field<double>(j, "grid_start_h", w);
  s.grid_end = field<double>(j, "grid_end_h", w);
  s.state_before = field<int>(j, "state_before", w);
  s.state_after = field<int>(j, "state_after", w);
  s.event = field<int>(j, "event", w);
  s.energy_mwh = field<double>(j, "energy_mwh", w);
  s.cost = field<double>(j, "cost", w);
  s.decision = optional_field<DecisionRecord>(j, "decision", w);
}

void to_json(json& j, const RunLog& log) {
  json meta{{"controller", log.meta.controller},
            {"machine", log.meta.machine},
            {"order", log.meta.order},
            {"tariff_digest", log.meta.tariff_digest},
            {"start_time_h", log.meta.start_time}};
  meta["config"] = log.meta.config ? json(*log.meta.config) : json(nullptr);

  json disturbances = json::array();
  for (const auto& d : log.disturbances) {
    disturbances.push_back({{"applied_at_h", d.applied_at}, {"disturbance", d.disturbance}});
  }
  j = json{{"meta", meta},
           {"steps", log.steps},
           {"totals",
            {{"energy_mwh", log.totals.energy_mwh},
             {"cost", log.totals.cost},
             {"parts", log.totals.parts},
             {"end_time_h", log.totals.end_time}}},
           {"outcome", std::string(to_string(log.outcome))},
           {"outcome_detail", log.outcome_detail},
           {"disturbances", disturbances},
           {"prices", log.prices}};
}

void from_json(const json& j, RunLog& log) {
  const std::string w = "run";
  const json meta = field<json>(j, "meta", w);
  log.meta.controller = field<std::string>(meta, "controller", "meta");
  log.meta.machine = field<MachineSpec>(meta, "machine", "meta");
  log.meta.order = field<OrderSpec>(meta, "order", "meta");
  log.meta.tariff_digest = field<std::string>(meta, "tariff_digest", "meta");
  log.meta.start_time = field<double>(meta, "start_time_h", "meta");
  log.meta.config = optional_field<LookaheadConfig>(meta, "config", "meta");

  log.steps = field<std::vector<StepRecord>>(j, "steps", w);
  const json totals = field<json>(j, "totals", w);
  log.totals.energy_mwh = field<double>(totals, "energy_mwh", "totals");
  log.totals.cost = field<double>(totals, "cost", "totals");
  log.totals.parts = field<int>(totals, "parts", "totals");
  log.totals.end_time = field<double>(totals, "end_time_h", "totals");
  log.outcome = run_outcome_from_string(field<std::string>(j, "outcome", w));
  log.outcome_detail = field<std::string>(j, "outcome_detail", w);
  log.disturbances.clear();
  for (const auto& d : field<json>(j, "disturbances", w)) {
    log.disturbances.push_back({field<Disturbance>(d, "disturbance", "disturbances"),
                                field<double>(d, "applied_at_h", "disturbances")});
  }
  log.prices = field<PriceSchedule>(j, "prices", w);
}

MachineSpec parse_machine(const json& j) {
  auto m = j.get<MachineSpec>();
  if (auto errors = validate(m); !errors.empty()) throw Error(ErrorCode::kSpecInvalid, errors.front());
  return m;
}

OrderSpec parse_order(const json& j) {
  auto o = j.get<OrderSpec>();
  if (auto errors = validate(o); !errors.empty()) throw Error(ErrorCode::kSpecInvalid, errors.front());
  return o;
}

PriceSchedule parse_prices(const json& j) { return j.get<PriceSchedule>(); }

std::vector<Disturbance> parse_disturbances(const json& j) {
  if (!j.is_object() || !j.contains("disturbances") || !j.at("disturbances").is_array()) {
    throw Error(ErrorCode::kParseError, "disturbances: missing array field 'disturbances'");
  }
  std::vector<Disturbance> out;
  const auto& arr = j.at("disturbances");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      out.push_back(arr[i].get<Disturbance>());
    } catch (const Error& e) {
      throw Error(e.code(), "disturbances[" + std::to_string(i) + "]: " + e.message());
    }
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

namespace {

template <typename Fn>
auto load_with_path(const std::filesystem::path& path, Fn&& parse) {
  const json j = read_json_file(path);
  try {
    return parse(j);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

}  // namespace

MachineSpec load_machine(const std::filesystem::path& path) { return load_with_path(path, parse_machine); }
OrderSpec load_order(const std::filesystem::path& path) { return load_with_path(path, parse_order); }
PriceSchedule load_prices(const std::filesystem::path& path) { return load_with_path(path, parse_prices); }
std::vector<Disturbance> load_disturbances(const std::filesystem::path& path) {
  return load_with_path(path, parse_disturbances);
}

json report_json(const ComparisonReport& report) {
  json timeline = json::object();
  for (const auto& [name, rows] : report.timeline) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"hour", r.hour},
                     {"power_mw", r.power_mw},
                     {"price_per_mwh", r.price_per_mwh},
                     {"cumulative_cost", r.cumulative_cost}});
    }
    timeline[name] = arr;
  }
  json runs = json::object();
  for (const auto& [name, log] : report.runs) runs[name] = log;
  return json{{"a", report.name_a},
              {"b", report.name_b},
              {"cost_a", report.cost_a},
              {"cost_b", report.cost_b},
              {"savings_percent", report.savings_percent},
              {"runs", runs},
              {"timeline", timeline}};
}

std::string dump_run_log(const RunLog& log) { return json(log).dump(2) + "\n"; }

}  // namespace dtsched
