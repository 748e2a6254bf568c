#pragma once

// JSON schemas for every file the engine reads or writes. Field names carry
// their unit suffix (_h for grid hours, _mw, _mwh, _per_mwh).

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtsched/decision.hpp"
#include "dtsched/planning.hpp"
#include "dtsched/pta.hpp"
#include "dtsched/run_log.hpp"
#include "dtsched/simulate.hpp"
#include "dtsched/tariff.hpp"

namespace dtsched {

using nlohmann::json;

void to_json(json& j, const MachineSpec& m);
void from_json(const json& j, MachineSpec& m);
void to_json(json& j, const OrderSpec& o);
void from_json(const json& j, OrderSpec& o);
void to_json(json& j, const PriceSchedule& p);
void from_json(const json& j, PriceSchedule& p);
void to_json(json& j, const Disturbance& d);
void from_json(const json& j, Disturbance& d);
void to_json(json& j, const LookaheadConfig& c);
void from_json(const json& j, LookaheadConfig& c);
void to_json(json& j, const ScheduleString& s);
void from_json(const json& j, ScheduleString& s);
void to_json(json& j, const Candidate& c);
void from_json(const json& j, Candidate& c);
void to_json(json& j, const DecisionRecord& d);
void from_json(const json& j, DecisionRecord& d);
void to_json(json& j, const StepRecord& s);
void from_json(const json& j, StepRecord& s);
void to_json(json& j, const RunLog& log);
void from_json(const json& j, RunLog& log);

// Parses with typed errors: ParseError for malformed JSON or missing fields,
// SpecInvalid for values that violate the schema's invariants. Messages lead
// with the originating path or field.
MachineSpec parse_machine(const json& j);
OrderSpec parse_order(const json& j);
PriceSchedule parse_prices(const json& j);
std::vector<Disturbance> parse_disturbances(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

MachineSpec load_machine(const std::filesystem::path& path);
OrderSpec load_order(const std::filesystem::path& path);
PriceSchedule load_prices(const std::filesystem::path& path);
std::vector<Disturbance> load_disturbances(const std::filesystem::path& path);

json report_json(const ComparisonReport& report);

// Canonical text form: two-space indentation and a trailing newline.
std::string dump_run_log(const RunLog& log);

}  // namespace dtsched
