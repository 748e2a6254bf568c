#include "dtsched/tariff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dtsched/error.hpp"

namespace dtsched {

namespace {

std::string fmt_hours(Hours t) {
  std::string s = std::to_string(t);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

PriceSchedule::PriceSchedule(std::vector<PriceSegment> segments) : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    const std::string where = "segment " + std::to_string(i);
    if (!std::isfinite(seg.start) || !std::isfinite(seg.end))
      throw Error(ErrorCode::kSpecInvalid, where + ": start_h and end_h must be finite");
    if (!(seg.end > seg.start))
      throw Error(ErrorCode::kSpecInvalid, where + ": end_h must exceed start_h");
    if (!(seg.price_per_mwh >= 0.0) || !std::isfinite(seg.price_per_mwh))
      throw Error(ErrorCode::kSpecInvalid, where + ": price_per_mwh must be a finite value >= 0");
    if (i > 0 && std::abs(seg.start - segments_[i - 1].end) > kTimeTolerance) {
      throw Error(ErrorCode::kSpecInvalid,
                  where + ": starts at " + fmt_hours(seg.start) + " but segment " + std::to_string(i - 1) +
                      " ends at " + fmt_hours(segments_[i - 1].end) + " (segments must be sorted and contiguous)");
    }
  }
}

PriceSchedule PriceSchedule::flat(Hours start, Hours end, double price) {
  return PriceSchedule({{start, end, price}});
}

Hours PriceSchedule::coverage_start() const {
  return segments_.empty() ? 0.0 : segments_.front().start;
}

Hours PriceSchedule::coverage_end() const {
  return segments_.empty() ? 0.0 : segments_.back().end;
}

bool PriceSchedule::covers(Hours from, Hours to) const {
  if (segments_.empty()) return false;
  return from >= coverage_start() - kTimeTolerance && to <= coverage_end() + kTimeTolerance;
}

double price_at(const PriceSchedule& sched, Hours t) {
  const auto& segs = sched.segments();
  if (segs.empty() || t < segs.front().start || t >= segs.back().end) {
    throw Error(ErrorCode::kOutOfCoverage, "no price defined at hour " + fmt_hours(t));
  }
  auto it = std::upper_bound(segs.begin(), segs.end(), t,
                             [](Hours value, const PriceSegment& seg) { return value < seg.end; });
  return it->price_per_mwh;
}

double transition_energy_cost(double power_mw, Hours t_start, Hours t_end, const PriceSchedule& sched) {
  if (!(t_end > t_start)) {
    throw Error(ErrorCode::kNonpositiveInterval,
                "interval [" + fmt_hours(t_start) + ", " + fmt_hours(t_end) + "] has no positive length");
  }
  if (!sched.covers(t_start, t_end)) {
    throw Error(ErrorCode::kOutOfCoverage, "interval [" + fmt_hours(t_start) + ", " + fmt_hours(t_end) +
                                               "] outside tariff coverage [" + fmt_hours(sched.coverage_start()) +
                                               ", " + fmt_hours(sched.coverage_end()) + ")");
  }
  const auto& segs = sched.segments();
  // First segment whose end lies beyond t_start.
  auto it = std::upper_bound(segs.begin(), segs.end(), t_start,
                             [](Hours value, const PriceSegment& seg) { return value < seg.end; });
  if (it == segs.end()) it = std::prev(segs.end());

  double energy_price = 0.0;
  for (; it != segs.end() && it->start < t_end; ++it) {
    const Hours lo = std::max(t_start, it->start);
    const Hours hi = std::min(t_end, it->end);
    if (hi > lo) energy_price += (hi - lo) * it->price_per_mwh;
  }
  // Tolerated overhang past either coverage edge is billed at the edge price.
  if (t_start < segs.front().start) energy_price += (segs.front().start - t_start) * segs.front().price_per_mwh;
  if (t_end > segs.back().end) energy_price += (t_end - segs.back().end) * segs.back().price_per_mwh;
  return power_mw * energy_price;
}

EnergyCostBreakdown string_energy_cost(const PtaModel& model, PartCount start_state, Hours start_global,
                                       const ScheduleString& s, const PriceSchedule& sched) {
  EnergyCostBreakdown out;
  const auto timings = transition_timings(model, start_state, start_global, s);
  out.per_event.reserve(timings.size());
  for (const auto& t : timings) {
    const double cost = transition_energy_cost(model.power(s[t.index]), t.start, t.end, sched);
    out.per_event.push_back({t.index, cost});
    out.total += cost;
  }
  return out;
}

PriceSchedule splice_prices(const PriceSchedule& current, const PriceSchedule& update, Hours at) {
  if (update.empty() || update.coverage_start() > at + kTimeTolerance || update.coverage_end() <= at) {
    throw Error(ErrorCode::kGapAtSplice, "update does not cover the splice instant " + fmt_hours(at));
  }
  if (!current.empty() && current.coverage_start() < at && current.coverage_end() < at - kTimeTolerance) {
    throw Error(ErrorCode::kGapAtSplice, "current schedule ends at " + fmt_hours(current.coverage_end()) +
                                             " before the splice instant " + fmt_hours(at));
  }

  std::vector<PriceSegment> out;
  bool current_cut = false;
  for (const auto& seg : current.segments()) {
    if (seg.start >= at) break;
    if (seg.end > at) {
      out.push_back({seg.start, at, seg.price_per_mwh});
      current_cut = true;
    } else {
      out.push_back(seg);
    }
  }
  bool first_update = true;
  for (const auto& seg : update.segments()) {
    if (seg.end <= at) continue;
    PriceSegment piece = seg;
    const bool update_cut = piece.start < at;
    if (update_cut) piece.start = at;
    // A segment cut on both sides at the same price is re-joined so that
    // splicing a schedule into itself is the identity.
    if (first_update && current_cut && update_cut && !out.empty() &&
        out.back().price_per_mwh == piece.price_per_mwh) {
      out.back().end = piece.end;
    } else {
      if (!out.empty()) piece.start = out.back().end;
      out.push_back(piece);
    }
    first_update = false;
  }
  return PriceSchedule(std::move(out));
}

std::uint64_t tariff_digest(const PriceSchedule& sched) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (word >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const auto& seg : sched.segments()) {
    mix(std::bit_cast<std::uint64_t>(seg.start));
    mix(std::bit_cast<std::uint64_t>(seg.end));
    mix(std::bit_cast<std::uint64_t>(seg.price_per_mwh));
  }
  return hash;
}

}  // namespace dtsched
