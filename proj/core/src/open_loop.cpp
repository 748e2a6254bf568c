#include <optional>

#include "dtsched/decision.hpp"
#include "dtsched/error.hpp"

namespace dtsched {

namespace {

// Depth-first search over strings from q0 that stop at the first marked
// state. Each node carries the energy spent so far; since prices are
// non-negative, TP/d of a prefix bounds J of every completion from below.
class OpenLoopSearch {
 public:
  OpenLoopSearch(const PtaModel& model, const PriceSchedule& sched, TieBreak tie_break)
      : model_(model), sched_(sched), tie_break_(tie_break) {}

  std::optional<OpenLoopResult> run(Hours start_global) {
    expand(model_.initial_state(), std::nullopt, start_global, 0.0);
    return best_;
  }

 private:
  bool beats_incumbent(double cost) const {
    if (!best_) return true;
    if (!costs_tie(cost, best_->cost)) return cost < best_->cost;
    return tie_break_prefers(tie_break_, path_, best_->schedule);
  }

  // Whether the state reached at `end_global` still admits every deadline.
  bool deadlines_hold(PartCount before, PartCount after, Hours end_global) const {
    for (const auto& c : model_.constraints()) {
      if (c.applies_at <= before) continue;
      if (c.applies_at <= after) {
        if (end_global > c.bound + kTimeTolerance) return false;
      } else if (earliest_completion(model_, after, end_global, c.applies_at) > c.bound + kTimeTolerance) {
        return false;
      }
    }
    return true;
  }

  void expand(PartCount state, std::optional<BatchSize> last, Hours global, double energy_cost) {
    const double demand = model_.demand();
    for (BatchSize b : feasible_events(model_, state, last)) {
      const Hours end = global + event_duration(model_, b);
      const Hours grid_start = model_.start_time() + global;
      const Hours grid_end = model_.start_time() + end;
      if (!sched_.covers(grid_start, grid_end)) continue;
      const PartCount next = state + b;
      if (!deadlines_hold(state, next, end)) continue;

      const double spent = energy_cost + transition_energy_cost(model_.power(b), grid_start, grid_end, sched_);
      if (best_ && spent / demand > best_->cost && !costs_tie(spent / demand, best_->cost)) continue;

      path_.push_back(b);
      if (is_marked(model_, next)) {
        const double cost = spent / demand + static_cast<double>(next - model_.demand());
        if (beats_incumbent(cost)) best_ = OpenLoopResult{path_, cost, spent};
      } else {
        expand(next, b, end, spent);
      }
      path_.pop_back();
    }
  }

  const PtaModel& model_;
  const PriceSchedule& sched_;
  TieBreak tie_break_;
  ScheduleString path_;
  std::optional<OpenLoopResult> best_;
};

}  // namespace

OpenLoopResult open_loop_optimal(const PtaModel& model, const PriceSchedule& sched, Hours start_global,
                                 TieBreak tie_break) {
  if (is_marked(model, model.initial_state())) return {};
  auto best = OpenLoopSearch(model, sched, tie_break).run(start_global);
  if (!best) {
    throw Error(ErrorCode::kInfeasible, "no schedule reaches a marked state within the deadlines and tariff horizon");
  }
  // Report TP through the same prefix-timing path the simulator uses.
  best->energy_cost = string_energy_cost(model, model.initial_state(), start_global, best->schedule, sched).total;
  return *best;
}

}  // namespace dtsched
