#pragma once

// Priced timed automaton of a single batch-production machine.
//
// States are cumulative part counts (state i == "i parts produced so far"),
// events are batch sizes (event 0 is an idle/set-up cycle). The transition
// relation is a chain and is never materialised; it is computed on demand
// from the machine capacity and the upper state bound d + v.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace dtsched {

using Hours = double;
using PartCount = int;
using BatchSize = int;

// Absolute tolerance applied to every comparison of clock values.
inline constexpr Hours kTimeTolerance = 1e-9;

struct MachineSpec {
  BatchSize capacity = 1;           // H
  Hours processing_time = 1.0;      // dwell of any non-idle batch
  Hours setup_time = 0.2;           // dwell of an idle event
  std::vector<double> power_mw;     // indexed by batch size 0..H
  PartCount inventory_capacity = 0; // r
  PartCount allocated_inventory = 0;// v <= r

  bool operator==(const MachineSpec&) const = default;
};

struct Milestone {
  PartCount quantity = 0;  // cumulative parts required
  Hours deadline = 0.0;    // hours after the order start

  bool operator==(const Milestone&) const = default;
};

struct OrderSpec {
  Hours start_time = 0.0;  // grid time T0, decimal hours
  std::vector<Milestone> milestones;
  // Required demand d. When absent it is the last milestone's quantity.
  std::optional<PartCount> demand;

  PartCount total_demand() const;

  bool operator==(const OrderSpec&) const = default;
};

// Collects every invariant violation as "field: message" lines.
std::vector<std::string> validate(const MachineSpec& machine);
std::vector<std::string> validate(const OrderSpec& order);

// Deadline on the global clock that binds the first time cumulative
// production reaches `applies_at` parts.
struct ClockConstraint {
  enum class Kind { kGlobalDeadline };

  Kind kind = Kind::kGlobalDeadline;
  Hours bound = 0.0;
  PartCount applies_at = 0;

  bool operator==(const ClockConstraint&) const = default;
};

// Local clock c^l (time spent in the current state, reset on every
// transition) and global clock c^g (time since T0, never reset).
struct ClockState {
  Hours local = 0.0;
  Hours global = 0.0;

  void elapse(Hours dt) {
    local += dt;
    global += dt;
  }
  void reset_local() { local = 0.0; }
};

class ScheduleString {
 public:
  ScheduleString() = default;
  ScheduleString(std::initializer_list<BatchSize> events) : events_(events) {}
  explicit ScheduleString(std::vector<BatchSize> events) : events_(std::move(events)) {}

  const std::vector<BatchSize>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  BatchSize operator[](std::size_t i) const { return events_[i]; }
  BatchSize front() const { return events_.front(); }
  BatchSize back() const { return events_.back(); }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }

  // s_[0,n): the first n events.
  ScheduleString prefix(std::size_t n) const;
  // s_[i,|s|): everything from event i on.
  ScheduleString suffix(std::size_t i) const;
  ScheduleString concat(const ScheduleString& tail) const;
  void push_back(BatchSize b) { events_.push_back(b); }
  void pop_back() { events_.pop_back(); }

  PartCount parts() const;
  bool has_consecutive_idle() const;
  // Throws InvalidEvent for sizes outside 0..capacity and ConsecutiveIdle
  // for two adjacent idle events.
  void validate(BatchSize capacity) const;

  std::string to_string() const;

  auto operator<=>(const ScheduleString&) const = default;
  bool operator==(const ScheduleString&) const = default;

 private:
  std::vector<BatchSize> events_;
};

class PtaModel {
 public:
  // Throws SpecInvalid listing every failed invariant.
  PtaModel(MachineSpec machine, OrderSpec order);

  const MachineSpec& machine() const { return machine_; }
  const OrderSpec& order() const { return order_; }

  PartCount demand() const { return demand_; }
  PartCount max_state() const { return demand_ + machine_.allocated_inventory; }
  BatchSize capacity() const { return machine_.capacity; }
  Hours start_time() const { return order_.start_time; }
  PartCount initial_state() const { return 0; }

  bool is_state(PartCount q) const { return q >= 0 && q <= max_state(); }
  bool is_event(BatchSize b) const { return b >= 0 && b <= machine_.capacity; }

  std::vector<PartCount> marked_states() const;

  // Constraints sorted by threshold; the map I restricted to states that
  // carry at least one deadline.
  const std::vector<ClockConstraint>& constraints() const { return constraints_; }
  std::vector<ClockConstraint> constraints_at(PartCount state) const;

  double power(BatchSize b) const { return machine_.power_mw.at(static_cast<std::size_t>(b)); }

  bool operator==(const PtaModel&) const = default;

 private:
  MachineSpec machine_;
  OrderSpec order_;
  PartCount demand_ = 0;
  std::vector<ClockConstraint> constraints_;
};

struct TransitionTiming {
  std::size_t index = 0;
  Hours start = 0.0;  // grid time T_s
  Hours end = 0.0;    // grid time T_e

  bool operator==(const TransitionTiming&) const = default;
};

struct ConstraintCheck {
  bool valid = true;
  std::optional<ClockConstraint> violated;
  // Grid time at which the threshold was first reached; empty when the
  // deadline elapsed without the threshold ever being reached.
  std::optional<Hours> crossing_time;
};

// Final state reached from `from_state` under `s`.
PartCount delta(const PtaModel& model, PartCount from_state, const ScheduleString& s);

Hours event_duration(const PtaModel& model, BatchSize event);

// Start and end grid times of each event of `s`, with the string beginning
// at global clock `start_global` (hours after T0).
std::vector<TransitionTiming> transition_timings(const PtaModel& model, PartCount start_state,
                                                 Hours start_global, const ScheduleString& s);

// Checks every deadline whose threshold lies above `start_state` (those at or
// below it were settled by the history). A threshold not yet reached is only a
// violation once its bound has elapsed by the end of `s`.
ConstraintCheck check_constraints(const PtaModel& model, PartCount start_state, Hours start_global,
                                  const ScheduleString& s);

std::vector<BatchSize> feasible_events(const PtaModel& model, PartCount state,
                                       std::optional<BatchSize> last_event);

bool is_marked(const PtaModel& model, PartCount state);

// Earliest global time at which `target` parts can be reached from `state`
// at global time `global`, running only full batches.
Hours earliest_completion(const PtaModel& model, PartCount state, Hours global, PartCount target);

}  // namespace dtsched
