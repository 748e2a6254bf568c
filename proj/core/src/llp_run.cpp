#include "dtsched/decision.hpp"
#include "dtsched/error.hpp"
#include "dtsched/run_log.hpp"

namespace dtsched {

namespace {

// Re-prices the in-flight part of the last executed event after a tariff
// splice dated inside it. Energy after `at` is billed at the new price.
void reprice_last_step(RunLog& log, const RuntimeContext& ctx, Hours at) {
  if (log.steps.empty()) return;
  StepRecord& step = log.steps.back();
  if (at >= step.grid_end) return;
  step.cost = transition_energy_cost(ctx.model.power(step.event), step.grid_start, step.grid_end, ctx.prices);
}

}  // namespace

RunLog llp_run(const PtaModel& model, const PriceSchedule& sched, const LookaheadConfig& cfg,
               const std::vector<Disturbance>& disturbances) {
  for (const auto& d : disturbances) {
    if (d.at < model.start_time() - kTimeTolerance) {
      throw Error(ErrorCode::kRetroactiveUpdate, "disturbance at hour " + std::to_string(d.at) +
                                                     " precedes the order start");
    }
  }
  return llp_run(make_context(model, sched, disturbances), cfg);
}

RunLog llp_run(RuntimeContext ctx, const LookaheadConfig& cfg) {
  if (cfg.window < 1) throw Error(ErrorCode::kSpecInvalid, "window: must be >= 1");

  RunLog log;
  log.meta = make_meta("llp", ctx.model, ctx.prices, cfg);
  const PartCount initial_state = ctx.current_state;
  const Hours initial_time = ctx.now();

  while (true) {
    auto [due, rest] = due_disturbances(ctx, ctx.now());
    ctx = std::move(rest);
    for (const auto& d : due) {
      ctx = apply_disturbance(ctx, d);
      if (d.is_tariff_update()) reprice_last_step(log, ctx, d.at);
      log.disturbances.push_back({d, ctx.now()});
    }

    if (is_marked(ctx.model, ctx.current_state)) {
      log.outcome = RunOutcome::kCompleted;
      break;
    }

    DecisionRecord decision;
    try {
      decision = llp_step(ctx.model, ctx.current_state, ctx.last_event, ctx.global_clock, ctx.prices, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kReschedulingFailure) throw;
      log.outcome = RunOutcome::kReschedulingFailure;
      log.outcome_detail = e.what();
      break;
    }

    const BatchSize event = decision.chosen_event;
    const Hours duration = event_duration(ctx.model, event);
    StepRecord step;
    step.index = log.steps.size();
    step.grid_start = ctx.model.start_time() + ctx.global_clock;
    step.grid_end = ctx.model.start_time() + (ctx.global_clock + duration);
    step.state_before = ctx.current_state;
    step.state_after = ctx.current_state + event;
    step.event = event;
    step.energy_mwh = ctx.model.power(event) * duration;
    step.cost = transition_energy_cost(ctx.model.power(event), step.grid_start, step.grid_end, ctx.prices);
    step.decision = std::move(decision);
    log.steps.push_back(std::move(step));

    ctx.current_state += event;
    ctx.last_event = event;
    ctx.global_clock += duration;
  }

  log.totals = fold_totals(log.steps, initial_state, initial_time);
  log.prices = ctx.prices;
  return log;
}

}  // namespace dtsched
