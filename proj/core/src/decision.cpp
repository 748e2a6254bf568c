#include "dtsched/decision.hpp"

#include <algorithm>
#include <cmath>

#include "dtsched/error.hpp"

namespace dtsched {

std::string_view to_string(TieBreak tb) {
  switch (tb) {
    case TieBreak::kLargestFirstEvent: return "largest-first-event";
    case TieBreak::kLexicographicLargest: return "lexicographic-largest";
  }
  return "largest-first-event";
}

TieBreak tie_break_from_string(std::string_view name) {
  if (name == "largest-first-event") return TieBreak::kLargestFirstEvent;
  if (name == "lexicographic-largest") return TieBreak::kLexicographicLargest;
  throw Error(ErrorCode::kParseError, "unknown tie-break '" + std::string(name) + "'");
}

std::string_view to_string(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::kValid: return "Valid";
    case CandidateStatus::kConstraintViolation: return "ConstraintViolation";
    case CandidateStatus::kConsecutiveIdle: return "ConsecutiveIdle";
    case CandidateStatus::kZeroDenominator: return "ZeroDenominator";
    case CandidateStatus::kCapacity: return "Capacity";
    case CandidateStatus::kOutOfCoverage: return "OutOfCoverage";
    case CandidateStatus::kInfeasibleFuture: return "InfeasibleFuture";
  }
  return "Valid";
}

CandidateStatus candidate_status_from_string(std::string_view name) {
  for (auto s : {CandidateStatus::kValid, CandidateStatus::kConstraintViolation, CandidateStatus::kConsecutiveIdle,
                 CandidateStatus::kZeroDenominator, CandidateStatus::kCapacity, CandidateStatus::kOutOfCoverage,
                 CandidateStatus::kInfeasibleFuture}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::kParseError, "unknown candidate status '" + std::string(name) + "'");
}

bool tie_break_prefers(TieBreak tb, const ScheduleString& a, const ScheduleString& b) {
  if (tb == TieBreak::kLargestFirstEvent && !a.empty() && !b.empty() && a.front() != b.front()) {
    return a.front() > b.front();
  }
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

bool costs_tie(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kCostTieTolerance * scale;
}

double cost_J(const PtaModel& model, const ScheduleString& s, const PriceSchedule& sched, Hours start_global) {
  const PartCount terminal = delta(model, model.initial_state(), s);
  if (!is_marked(model, terminal)) {
    throw Error(ErrorCode::kNotMarked, "string " + s.to_string() + " ends in q" + std::to_string(terminal) +
                                           ", below demand " + std::to_string(model.demand()));
  }
  if (model.demand() == 0) {
    throw Error(ErrorCode::kZeroDenominator, "average energy cost is undefined for zero demand");
  }
  const double tp = string_energy_cost(model, model.initial_state(), start_global, s, sched).total;
  return tp / model.demand() + static_cast<double>(terminal - model.demand());
}

int indicator_xi(const PtaModel& model, PartCount terminal_state) {
  return is_marked(model, terminal_state) ? 1 : 0;
}

double cost_J_prime(const PtaModel& model, PartCount from_state, const ScheduleString& s,
                    const PriceSchedule& sched, Hours start_global) {
  const PartCount terminal = delta(model, from_state, s);
  const int xi = indicator_xi(model, terminal);
  const PartCount denominator = (1 - xi) * terminal + xi * model.demand();
  if (denominator == 0) {
    throw Error(ErrorCode::kZeroDenominator, "string " + s.to_string() + " from q" + std::to_string(from_state) +
                                                 " ends with zero parts produced");
  }
  const double tp = string_energy_cost(model, from_state, start_global, s, sched).total;
  return tp / denominator + static_cast<double>(xi * (terminal - model.demand()));
}

namespace {

void expand_tree(const PtaModel& model, PartCount state, std::optional<BatchSize> last, int depth_left,
                 ScheduleString& path, std::vector<ScheduleString>& out) {
  for (BatchSize b : feasible_events(model, state, last)) {
    path.push_back(b);
    out.push_back(path);
    if (depth_left > 1) expand_tree(model, state + b, b, depth_left - 1, path, out);
    path.pop_back();
  }
}

Hours string_duration(const PtaModel& model, const ScheduleString& s) {
  Hours total = 0.0;
  for (BatchSize b : s) total += event_duration(model, b);
  return total;
}

CandidateStatus classify(const PtaModel& model, PartCount from_state, Hours global_clock, const ScheduleString& s,
                         PartCount terminal, const PriceSchedule& sched, const LookaheadConfig& cfg) {
  if (s.has_consecutive_idle()) return CandidateStatus::kConsecutiveIdle;
  if (terminal > model.max_state()) return CandidateStatus::kCapacity;
  if (!is_marked(model, terminal) && terminal == 0) return CandidateStatus::kZeroDenominator;

  const Hours end_global = global_clock + string_duration(model, s);
  if (!sched.covers(model.start_time() + global_clock, model.start_time() + end_global)) {
    return CandidateStatus::kOutOfCoverage;
  }
  if (!check_constraints(model, from_state, global_clock, s).valid) return CandidateStatus::kConstraintViolation;

  if (cfg.prune_infeasible_futures && !is_marked(model, terminal)) {
    for (const auto& c : model.constraints()) {
      if (c.applies_at <= terminal) continue;
      if (earliest_completion(model, terminal, end_global, c.applies_at) > c.bound + kTimeTolerance) {
        return CandidateStatus::kInfeasibleFuture;
      }
    }
  }
  return CandidateStatus::kValid;
}

bool prefers(const PtaModel& model, const LookaheadConfig& cfg, const Candidate& a, const Candidate& b) {
  if (cfg.prefer_completion) {
    const bool a_done = is_marked(model, a.terminal_state);
    const bool b_done = is_marked(model, b.terminal_state);
    if (a_done != b_done) return a_done;
  }
  if (!costs_tie(*a.cost, *b.cost)) return *a.cost < *b.cost;
  return tie_break_prefers(cfg.tie_break, a.string, b.string);
}

}  // namespace

std::vector<ScheduleString> lookahead_tree(const PtaModel& model, PartCount from_state,
                                           std::optional<BatchSize> last_event, int window) {
  if (window < 1) throw Error(ErrorCode::kSpecInvalid, "window: must be >= 1");
  std::vector<ScheduleString> out;
  if (is_marked(model, from_state)) return out;
  ScheduleString path;
  expand_tree(model, from_state, last_event, window, path, out);
  return out;
}

DecisionRecord llp_step(const PtaModel& model, PartCount from_state, std::optional<BatchSize> last_event,
                        Hours global_clock, const PriceSchedule& sched, const LookaheadConfig& cfg) {
  if (is_marked(model, from_state)) {
    throw Error(ErrorCode::kInvalidSchedule,
                "q" + std::to_string(from_state) + " is already marked; no decision is required");
  }
  DecisionRecord record;
  record.at_state = from_state;
  record.at_global = global_clock;

  const auto tree = lookahead_tree(model, from_state, last_event, cfg.window);
  record.candidates.reserve(tree.size());
  for (const auto& s : tree) {
    Candidate c;
    c.string = s;
    c.terminal_state = from_state + s.parts();
    c.status = classify(model, from_state, global_clock, s, c.terminal_state, sched, cfg);
    if (c.valid()) c.cost = cost_J_prime(model, from_state, s, sched, global_clock);
    record.candidates.push_back(std::move(c));
  }

  // Ordered reduction over the tree order keeps the choice independent of
  // how candidates were evaluated.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < record.candidates.size(); ++i) {
    const auto& c = record.candidates[i];
    if (!c.valid()) continue;
    if (!best || prefers(model, cfg, c, record.candidates[*best])) best = i;
  }
  if (!best) {
    throw Error(ErrorCode::kReschedulingFailure,
                "no valid candidate among " + std::to_string(tree.size()) + " strings from q" +
                    std::to_string(from_state) + " at global hour " + std::to_string(global_clock));
  }
  record.chosen_index = *best;
  record.chosen_event = record.candidates[*best].string.front();
  return record;
}

ScheduleString benchmark_schedule(const PtaModel& model) {
  ScheduleString s;
  PartCount remaining = model.demand();
  while (remaining > 0) {
    const BatchSize b = std::min(remaining, model.capacity());
    s.push_back(b);
    remaining -= b;
  }
  const auto check = check_constraints(model, model.initial_state(), 0.0, s);
  if (!check.valid) {
    throw Error(ErrorCode::kInfeasibleDeadline,
                "benchmark " + s.to_string() + " misses the milestone of " +
                    std::to_string(check.violated->applies_at) + " parts by hour " +
                    std::to_string(check.violated->bound));
  }
  return s;
}

}  // namespace dtsched
