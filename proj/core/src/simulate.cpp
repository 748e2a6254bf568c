#include "dtsched/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "dtsched/error.hpp"

namespace dtsched {

RunLog run_llp(const MachineSpec& machine, const OrderSpec& order, const PriceSchedule& prices,
               const LookaheadConfig& cfg, const std::vector<Disturbance>& disturbances) {
  return llp_run(init_model(machine, order), prices, cfg, disturbances);
}

RunLog run_fixed(const MachineSpec& machine, const OrderSpec& order, const PriceSchedule& prices,
                 const ScheduleString& s) {
  const PtaModel model = init_model(machine, order);
  s.validate(model.capacity());
  delta(model, model.initial_state(), s);

  RunLog log;
  log.meta = make_meta("fixed", model, prices, std::nullopt);
  const auto timings = transition_timings(model, model.initial_state(), 0.0, s);
  PartCount state = model.initial_state();
  for (const auto& t : timings) {
    const BatchSize event = s[t.index];
    StepRecord step;
    step.index = t.index;
    step.grid_start = t.start;
    step.grid_end = t.end;
    step.state_before = state;
    step.state_after = state + event;
    step.event = event;
    step.energy_mwh = model.power(event) * event_duration(model, event);
    step.cost = transition_energy_cost(model.power(event), t.start, t.end, prices);
    log.steps.push_back(step);
    state += event;
  }

  const auto check = check_constraints(model, model.initial_state(), 0.0, s);
  if (!check.valid) {
    log.outcome = RunOutcome::kViolated;
    char buf[160];
    if (check.crossing_time) {
      std::snprintf(buf, sizeof buf, "milestone %d parts by hour %g crossed at grid hour %g",
                    check.violated->applies_at, check.violated->bound, *check.crossing_time);
    } else {
      std::snprintf(buf, sizeof buf, "milestone %d parts by hour %g never reached", check.violated->applies_at,
                    check.violated->bound);
    }
    log.outcome_detail = buf;
  } else if (!is_marked(model, state)) {
    log.outcome = RunOutcome::kIncomplete;
    log.outcome_detail = "schedule ends at q" + std::to_string(state) + " below demand " +
                         std::to_string(model.demand());
  }
  log.totals = fold_totals(log.steps, model.initial_state(), model.start_time());
  log.prices = prices;
  return log;
}

std::vector<TimelineRow> hourly_timeline(const RunLog& log) {
  std::vector<TimelineRow> rows;
  if (log.steps.empty()) return rows;
  const double first = std::floor(log.steps.front().grid_start);
  const double last = std::ceil(log.steps.back().grid_end - kTimeTolerance);

  double completed_cost = 0.0;
  std::size_t next_step = 0;
  for (double hour = first; hour < last; hour += 1.0) {
    const double lo = hour;
    const double hi = hour + 1.0;
    TimelineRow row;
    row.hour = hour;

    double energy = 0.0;
    for (const auto& step : log.steps) {
      const double a = std::max(lo, step.grid_start);
      const double b = std::min(hi, step.grid_end);
      if (b > a) energy += step.energy_mwh / (step.grid_end - step.grid_start) * (b - a);
    }
    row.power_mw = energy / (hi - lo);

    const double plo = std::max(lo, log.prices.coverage_start());
    const double phi = std::min(hi, log.prices.coverage_end());
    if (phi > plo) row.price_per_mwh = transition_energy_cost(1.0, plo, phi, log.prices) / (phi - plo);

    while (next_step < log.steps.size() && log.steps[next_step].grid_end <= hi + kTimeTolerance) {
      completed_cost += log.steps[next_step].cost;
      ++next_step;
    }
    double partial = 0.0;
    if (next_step < log.steps.size()) {
      const auto& step = log.steps[next_step];
      if (step.grid_start < hi) {
        const double power = step.energy_mwh / (step.grid_end - step.grid_start);
        partial = transition_energy_cost(power, step.grid_start, hi, log.prices);
      }
    }
    row.cumulative_cost = completed_cost + partial;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Shortest text that round-trips to the same double.
void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

}  // namespace

std::string timeline_csv(const std::vector<TimelineRow>& rows) {
  std::string out = "hour,power_mw,price_per_mwh,cumulative_cost\n";
  for (const auto& r : rows) {
    append_number(out, r.hour);
    out += ',';
    append_number(out, r.power_mw);
    out += ',';
    append_number(out, r.price_per_mwh);
    out += ',';
    append_number(out, r.cumulative_cost);
    out += '\n';
  }
  return out;
}

ComparisonReport compare(const RunLog& a, const RunLog& b, std::string name_a, std::string name_b) {
  if (a.meta.machine != b.meta.machine) throw Error(ErrorCode::kMismatchedFixtures, "runs use different machines");
  if (a.meta.order != b.meta.order) throw Error(ErrorCode::kMismatchedFixtures, "runs use different orders");
  if (a.meta.tariff_digest != b.meta.tariff_digest) {
    throw Error(ErrorCode::kMismatchedFixtures,
                "tariff digests differ (" + a.meta.tariff_digest + " vs " + b.meta.tariff_digest + ")");
  }
  if (name_a == name_b) name_b += "_2";

  ComparisonReport report;
  report.name_a = name_a;
  report.name_b = name_b;
  report.cost_a = a.totals.cost;
  report.cost_b = b.totals.cost;
  report.savings_percent = report.cost_b == 0.0 ? 0.0 : (report.cost_b - report.cost_a) / report.cost_b * 100.0;
  report.runs.emplace(name_a, a);
  report.runs.emplace(name_b, b);
  report.timeline.emplace(name_a, hourly_timeline(a));
  report.timeline.emplace(name_b, hourly_timeline(b));
  return report;
}

}  // namespace dtsched
