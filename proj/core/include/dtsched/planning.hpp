#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dtsched/pta.hpp"
#include "dtsched/tariff.hpp"

namespace dtsched {

struct TariffUpdate {
  PriceSchedule prices;
  bool operator==(const TariffUpdate&) const = default;
};

struct OrderUpdate {
  OrderSpec order;
  bool operator==(const OrderUpdate&) const = default;
};

// A runtime change to the production environment, dated on the grid clock.
struct Disturbance {
  Hours at = 0.0;
  std::variant<TariffUpdate, OrderUpdate> change;

  bool is_tariff_update() const { return std::holds_alternative<TariffUpdate>(change); }
  bool operator==(const Disturbance&) const = default;
};

struct RuntimeContext {
  PtaModel model;
  PriceSchedule prices;
  PartCount current_state = 0;
  std::optional<BatchSize> last_event;
  Hours global_clock = 0.0;  // hours since T0
  std::vector<Disturbance> pending_disturbances;  // sorted by `at`

  Hours now() const { return model.start_time() + global_clock; }
};

// Builds the automaton from the machine and order. Throws SpecInvalid with
// one "field: message" entry per violated invariant.
PtaModel init_model(const MachineSpec& machine, const OrderSpec& order);

// Fresh context at q0 with the disturbance queue stably sorted by time.
RuntimeContext make_context(PtaModel model, PriceSchedule prices, std::vector<Disturbance> disturbances = {});

// Tariff updates splice the prices at `dist.at`; order updates rebuild the
// automaton while keeping the current state and clocks. Disturbances dated
// before the start of the last executed event are rejected.
RuntimeContext apply_disturbance(const RuntimeContext& ctx, const Disturbance& dist);

// Removes and returns every pending disturbance with at <= now, in time order
// (ties keep insertion order).
std::pair<std::vector<Disturbance>, RuntimeContext> due_disturbances(const RuntimeContext& ctx, Hours now);

}  // namespace dtsched
