#pragma once

#include <cstdint>
#include <vector>

#include "dtsched/pta.hpp"

namespace dtsched {

struct PriceSegment {
  Hours start = 0.0;
  Hours end = 0.0;
  double price_per_mwh = 0.0;

  bool operator==(const PriceSegment&) const = default;
};

// Piecewise-constant Time-of-Use tariff f(T). Segments are half-open
// [start, end), sorted, contiguous and non-negative; the constructor rejects
// anything else and names the offending segment index.
class PriceSchedule {
 public:
  PriceSchedule() = default;
  explicit PriceSchedule(std::vector<PriceSegment> segments);

  static PriceSchedule flat(Hours start, Hours end, double price);

  const std::vector<PriceSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  Hours coverage_start() const;
  Hours coverage_end() const;
  // True when [from, to] lies inside the coverage (within kTimeTolerance).
  bool covers(Hours from, Hours to) const;

  bool operator==(const PriceSchedule&) const = default;

 private:
  std::vector<PriceSegment> segments_;
};

struct EventCost {
  std::size_t event_index = 0;
  double cost = 0.0;

  bool operator==(const EventCost&) const = default;
};

struct EnergyCostBreakdown {
  std::vector<EventCost> per_event;
  double total = 0.0;
};

double price_at(const PriceSchedule& sched, Hours t);

// Exact integral of power * f(T) over [t_start, t_end], split at segment
// boundaries.
double transition_energy_cost(double power_mw, Hours t_start, Hours t_end, const PriceSchedule& sched);

EnergyCostBreakdown string_energy_cost(const PtaModel& model, PartCount start_state, Hours start_global,
                                       const ScheduleString& s, const PriceSchedule& sched);

// `current` before `at`, `update` from `at` on.
PriceSchedule splice_prices(const PriceSchedule& current, const PriceSchedule& update, Hours at);

// Stable 64-bit FNV-1a digest over the exact bit patterns of the segments.
std::uint64_t tariff_digest(const PriceSchedule& sched);

}  // namespace dtsched
