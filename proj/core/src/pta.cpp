#include "dtsched/pta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dtsched/error.hpp"

namespace dtsched {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

}  // namespace

PartCount OrderSpec::total_demand() const {
  if (demand) return *demand;
  return milestones.empty() ? 0 : milestones.back().quantity;
}

std::vector<std::string> validate(const MachineSpec& machine) {
  std::vector<std::string> errors;
  if (machine.capacity < 1) errors.push_back("machine.capacity: must be >= 1");
  if (!(machine.processing_time > 0.0) || !std::isfinite(machine.processing_time))
    errors.push_back("machine.processing_time_h: must be > 0");
  if (!(machine.setup_time > 0.0) || !std::isfinite(machine.setup_time))
    errors.push_back("machine.setup_time_h: must be > 0");
  if (machine.inventory_capacity < 0) errors.push_back("machine.inventory_capacity: must be >= 0");
  if (machine.allocated_inventory < 0) errors.push_back("machine.allocated_inventory: must be >= 0");
  if (machine.allocated_inventory > machine.inventory_capacity)
    errors.push_back("machine.allocated_inventory: must not exceed inventory_capacity");
  if (machine.capacity >= 1) {
    const auto expected = static_cast<std::size_t>(machine.capacity) + 1;
    if (machine.power_mw.size() != expected) {
      errors.push_back("machine.power_mw: expected " + std::to_string(expected) +
                       " entries (batch sizes 0.." + std::to_string(machine.capacity) + "), got " +
                       std::to_string(machine.power_mw.size()));
    }
  }
  for (std::size_t b = 0; b < machine.power_mw.size(); ++b) {
    const double p = machine.power_mw[b];
    if (!(p >= 0.0) || !std::isfinite(p))
      errors.push_back("machine.power_mw[" + std::to_string(b) + "]: must be a finite value >= 0");
    if (b > 0 && p < machine.power_mw[b - 1])
      errors.push_back("machine.power_mw[" + std::to_string(b) + "]: must be non-decreasing in batch size");
  }
  return errors;
}

std::vector<std::string> validate(const OrderSpec& order) {
  std::vector<std::string> errors;
  if (!std::isfinite(order.start_time)) errors.push_back("order.start_time_h: must be finite");
  for (std::size_t i = 0; i < order.milestones.size(); ++i) {
    const auto& m = order.milestones[i];
    const std::string field = "order.milestones[" + std::to_string(i) + "]";
    if (m.quantity < 1) errors.push_back(field + ".quantity: must be >= 1");
    if (!(m.deadline > 0.0) || !std::isfinite(m.deadline))
      errors.push_back(field + ".deadline_h: must be > 0");
    if (i > 0) {
      const auto& prev = order.milestones[i - 1];
      if (m.quantity <= prev.quantity)
        errors.push_back(field + ".quantity: milestones must be strictly increasing in quantity");
      if (m.deadline <= prev.deadline)
        errors.push_back(field + ".deadline_h: milestones must be strictly increasing in deadline");
    }
  }
  if (order.demand) {
    if (*order.demand < 0) errors.push_back("order.total_demand: must be >= 0");
    if (!order.milestones.empty() && order.milestones.back().quantity > *order.demand)
      errors.push_back("order.total_demand: smaller than the last milestone quantity");
  }
  return errors;
}

ScheduleString ScheduleString::prefix(std::size_t n) const {
  n = std::min(n, events_.size());
  return ScheduleString(std::vector<BatchSize>(events_.begin(), events_.begin() + static_cast<std::ptrdiff_t>(n)));
}

ScheduleString ScheduleString::suffix(std::size_t i) const {
  i = std::min(i, events_.size());
  return ScheduleString(std::vector<BatchSize>(events_.begin() + static_cast<std::ptrdiff_t>(i), events_.end()));
}

ScheduleString ScheduleString::concat(const ScheduleString& tail) const {
  std::vector<BatchSize> out = events_;
  out.insert(out.end(), tail.events_.begin(), tail.events_.end());
  return ScheduleString(std::move(out));
}

PartCount ScheduleString::parts() const {
  PartCount total = 0;
  for (BatchSize b : events_) total += b;
  return total;
}

bool ScheduleString::has_consecutive_idle() const {
  for (std::size_t i = 1; i < events_.size(); ++i) {
    if (events_[i] == 0 && events_[i - 1] == 0) return true;
  }
  return false;
}

void ScheduleString::validate(BatchSize capacity) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i] < 0 || events_[i] > capacity) {
      throw Error(ErrorCode::kInvalidEvent, "event " + std::to_string(i) + " has batch size " +
                                                std::to_string(events_[i]) + " outside 0.." +
                                                std::to_string(capacity));
    }
    if (i > 0 && events_[i] == 0 && events_[i - 1] == 0) {
      throw Error(ErrorCode::kConsecutiveIdle,
                  "events " + std::to_string(i - 1) + " and " + std::to_string(i) + " are both idle");
    }
  }
}

std::string ScheduleString::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i) os << ',';
    os << events_[i];
  }
  os << ']';
  return os.str();
}

PtaModel::PtaModel(MachineSpec machine, OrderSpec order)
    : machine_(std::move(machine)), order_(std::move(order)) {
  auto errors = validate(machine_);
  auto order_errors = validate(order_);
  errors.insert(errors.end(), order_errors.begin(), order_errors.end());
  if (!errors.empty()) throw Error(ErrorCode::kSpecInvalid, join_lines(errors));

  demand_ = order_.total_demand();
  constraints_.reserve(order_.milestones.size());
  for (const auto& m : order_.milestones) {
    constraints_.push_back({ClockConstraint::Kind::kGlobalDeadline, m.deadline, m.quantity});
  }
}

std::vector<PartCount> PtaModel::marked_states() const {
  std::vector<PartCount> out;
  for (PartCount q = demand_; q <= max_state(); ++q) out.push_back(q);
  return out;
}

std::vector<ClockConstraint> PtaModel::constraints_at(PartCount state) const {
  std::vector<ClockConstraint> out;
  for (const auto& c : constraints_) {
    if (c.applies_at == state) out.push_back(c);
  }
  return out;
}

PartCount delta(const PtaModel& model, PartCount from_state, const ScheduleString& s) {
  if (!model.is_state(from_state)) {
    throw Error(ErrorCode::kCapacityExceeded,
                "state q" + std::to_string(from_state) + " is not in Q (max q" +
                    std::to_string(model.max_state()) + ")");
  }
  PartCount q = from_state;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!model.is_event(s[i])) {
      throw Error(ErrorCode::kInvalidEvent,
                  "event " + std::to_string(i) + " has batch size " + std::to_string(s[i]));
    }
    q += s[i];
    if (q > model.max_state()) {
      throw Error(ErrorCode::kCapacityExceeded,
                  "prefix of length " + std::to_string(i + 1) + " reaches q" + std::to_string(q) +
                      " beyond q" + std::to_string(model.max_state()));
    }
  }
  return q;
}

Hours event_duration(const PtaModel& model, BatchSize event) {
  if (!model.is_event(event)) {
    throw Error(ErrorCode::kInvalidEvent, "batch size " + std::to_string(event) + " outside 0.." +
                                              std::to_string(model.capacity()));
  }
  return event == 0 ? model.machine().setup_time : model.machine().processing_time;
}

std::vector<TransitionTiming> transition_timings(const PtaModel& model, PartCount start_state,
                                                 Hours start_global, const ScheduleString& s) {
  delta(model, start_state, s);

  std::vector<TransitionTiming> out;
  out.reserve(s.size());
  ClockState clock{0.0, start_global};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Hours begin = model.start_time() + clock.global;
    clock.elapse(event_duration(model, s[i]));
    out.push_back({i, begin, model.start_time() + clock.global});
    clock.reset_local();
  }
  return out;
}

ConstraintCheck check_constraints(const PtaModel& model, PartCount start_state, Hours start_global,
                                  const ScheduleString& s) {
  if (s.has_consecutive_idle()) {
    throw Error(ErrorCode::kConsecutiveIdle, "string " + s.to_string() + " contains two adjacent idle events");
  }
  const auto timings = transition_timings(model, start_state, start_global, s);
  const Hours t0 = model.start_time();
  const Hours end_global = timings.empty() ? start_global : timings.back().end - t0;

  for (const auto& c : model.constraints()) {
    if (c.applies_at <= start_state) continue;  // settled by the history

    std::optional<Hours> crossing;
    PartCount q = start_state;
    for (std::size_t i = 0; i < s.size(); ++i) {
      q += s[i];
      if (q >= c.applies_at) {
        crossing = timings[i].end;
        break;
      }
    }
    if (crossing) {
      if (*crossing - t0 > c.bound + kTimeTolerance) return {false, c, crossing};
    } else if (end_global > c.bound + kTimeTolerance) {
      return {false, c, std::nullopt};
    }
  }
  return {};
}

std::vector<BatchSize> feasible_events(const PtaModel& model, PartCount state,
                                       std::optional<BatchSize> last_event) {
  std::vector<BatchSize> out;
  if (!model.is_state(state) || is_marked(model, state)) return out;
  for (BatchSize b = 0; b <= model.capacity(); ++b) {
    if (b == 0 && last_event && *last_event == 0) continue;
    if (state + b > model.max_state()) break;
    out.push_back(b);
  }
  return out;
}

bool is_marked(const PtaModel& model, PartCount state) {
  return state >= model.demand() && state <= model.max_state();
}

Hours earliest_completion(const PtaModel& model, PartCount state, Hours global, PartCount target) {
  if (state >= target) return global;
  const PartCount missing = target - state;
  const PartCount batches = (missing + model.capacity() - 1) / model.capacity();
  return global + batches * model.machine().processing_time;
}

}  // namespace dtsched
