#include "dtsched/planning.hpp"

#include <algorithm>
#include <cmath>

#include "dtsched/error.hpp"

namespace dtsched {

PtaModel init_model(const MachineSpec& machine, const OrderSpec& order) {
  return PtaModel(machine, order);
}

RuntimeContext make_context(PtaModel model, PriceSchedule prices, std::vector<Disturbance> disturbances) {
  std::stable_sort(disturbances.begin(), disturbances.end(),
                   [](const Disturbance& a, const Disturbance& b) { return a.at < b.at; });
  RuntimeContext ctx{std::move(model), std::move(prices), 0, std::nullopt, 0.0, std::move(disturbances)};
  return ctx;
}

namespace {

// Earliest instant that is still open to change: the start of the event
// that just executed (its remainder may be re-priced), or T0.
Hours mutable_from(const RuntimeContext& ctx) {
  if (!ctx.last_event) return ctx.model.start_time();
  return ctx.now() - event_duration(ctx.model, *ctx.last_event);
}

PtaModel rebuild_for_order(const RuntimeContext& ctx, const OrderSpec& order) {
  const PtaModel& old = ctx.model;
  if (std::abs(order.start_time - old.start_time()) > kTimeTolerance) {
    throw Error(ErrorCode::kSpecInvalid, "order.start_time_h: an order update must keep the original start time");
  }
  for (const auto& c : old.constraints()) {
    if (c.applies_at > ctx.current_state) continue;
    const bool kept = std::any_of(order.milestones.begin(), order.milestones.end(), [&](const Milestone& m) {
      return m.quantity == c.applies_at && std::abs(m.deadline - c.bound) <= kTimeTolerance;
    });
    if (!kept) {
      throw Error(ErrorCode::kSpecInvalid, "order.milestones: crossed milestone " + std::to_string(c.applies_at) +
                                               " parts must be preserved by an order update");
    }
  }
  PtaModel rebuilt = init_model(old.machine(), order);
  if (ctx.current_state > rebuilt.max_state()) {
    throw Error(ErrorCode::kSpecInvalid, "order.total_demand: already produced " +
                                             std::to_string(ctx.current_state) + " parts, beyond the new state space");
  }
  return rebuilt;
}

}  // namespace

RuntimeContext apply_disturbance(const RuntimeContext& ctx, const Disturbance& dist) {
  if (dist.at < mutable_from(ctx) - kTimeTolerance) {
    throw Error(ErrorCode::kRetroactiveUpdate, "disturbance at hour " + std::to_string(dist.at) +
                                                   " predates an executed event (earliest allowed " +
                                                   std::to_string(mutable_from(ctx)) + ")");
  }
  RuntimeContext next = ctx;
  if (const auto* tariff = std::get_if<TariffUpdate>(&dist.change)) {
    next.prices = splice_prices(ctx.prices, tariff->prices, dist.at);
  } else {
    next.model = rebuild_for_order(ctx, std::get<OrderUpdate>(dist.change).order);
  }
  return next;
}

std::pair<std::vector<Disturbance>, RuntimeContext> due_disturbances(const RuntimeContext& ctx, Hours now) {
  RuntimeContext rest = ctx;
  std::vector<Disturbance> due;
  auto split = std::stable_partition(rest.pending_disturbances.begin(), rest.pending_disturbances.end(),
                                     [now](const Disturbance& d) { return d.at <= now + kTimeTolerance; });
  due.assign(rest.pending_disturbances.begin(), split);
  rest.pending_disturbances.erase(rest.pending_disturbances.begin(), split);
  std::stable_sort(due.begin(), due.end(), [](const Disturbance& a, const Disturbance& b) { return a.at < b.at; });
  return {std::move(due), std::move(rest)};
}

}  // namespace dtsched
