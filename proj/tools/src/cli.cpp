#include "dtsched_cli/cli.hpp"

#include <ostream>

#include "dtsched/decision.hpp"
#include "dtsched/error.hpp"
#include "dtsched/json_io.hpp"
#include "dtsched/simulate.hpp"
#include "dtsched/store.hpp"

namespace dtsched::cli {
namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kInfeasibleDeadline:
      return kExitInfeasible;
    case ErrorCode::kReschedulingFailure:
      return kExitRescheduling;
    default:
      return kExitInput;
  }
}

struct Inputs {
  MachineSpec machine;
  OrderSpec order;
  PriceSchedule prices;
  std::vector<Disturbance> disturbances;
};

Inputs load_inputs(const CliConfig& cfg) {
  Inputs in;
  in.machine = load_machine(cfg.machine_path);
  in.order = load_order(cfg.order_path);
  in.prices = load_prices(cfg.prices_path);
  if (cfg.disturbances_path) in.disturbances = load_disturbances(*cfg.disturbances_path);
  return in;
}

void emit(const CliConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path) {
    write_text_file(*cfg.out_path, text);
  } else {
    out << text;
  }
}

// The look-ahead loop treats a price gap as just another way to run out of
// valid candidates. A tariff that cannot even cover the fastest possible
// completion is an input problem, so reject it before running.
void require_minimum_coverage(const PtaModel& model, const PriceSchedule& prices) {
  const Hours t0 = model.start_time();
  const Hours t1 = t0 + earliest_completion(model, model.initial_state(), 0.0, model.demand());
  if (!prices.covers(t0, t1)) {
    throw Error(ErrorCode::kOutOfCoverage, "tariff covers [" + std::to_string(prices.coverage_start()) + ", " +
                                               std::to_string(prices.coverage_end()) + ") but the order needs at least [" +
                                               std::to_string(t0) + ", " + std::to_string(t1) + ")");
  }
}

RunLog run_benchmark(const MachineSpec& machine, const OrderSpec& order, const PriceSchedule& prices) {
  const PtaModel model = init_model(machine, order);
  require_minimum_coverage(model, prices);
  return run_fixed(machine, order, prices, benchmark_schedule(model));
}

std::string render_log(const CliConfig& cfg, const RunLog& log) {
  return cfg.format == OutputFormat::kCsv ? timeline_csv(hourly_timeline(log)) : dump_run_log(log);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "dtsched: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace

int cmd_plan(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    const PtaModel model = init_model(in.machine, in.order);
    const OpenLoopResult best = open_loop_optimal(model, in.prices);
    const auto timings = transition_timings(model, model.initial_state(), 0.0, best.schedule);
    const json doc{{"schedule", best.schedule},
                   {"cost", best.cost},
                   {"energy_cost", best.energy_cost},
                   {"end_time_h", timings.empty() ? model.start_time() : timings.back().end}};
    emit(cfg, out, doc.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    const PtaModel model = init_model(in.machine, in.order);
    require_minimum_coverage(model, in.prices);
    LookaheadConfig lcfg;
    lcfg.window = cfg.window;
    const RunLog log = run_llp(in.machine, in.order, in.prices, lcfg, in.disturbances);

    HistoryStore store(cfg.data_dir);
    const auto id = store.append_run(log);
    err << "dtsched: stored run " << id << " in " << store.data_dir().string() << '\n';
    emit(cfg, out, render_log(cfg, log));

    if (log.outcome == RunOutcome::kReschedulingFailure) {
      err << "dtsched: ReschedulingFailure: " << log.outcome_detail << '\n';
      return kExitRescheduling;
    }
    return kExitOk;
  });
}

int cmd_benchmark(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    const RunLog log = run_benchmark(in.machine, in.order, in.prices);
    HistoryStore store(cfg.data_dir);
    const auto id = store.append_run(log);
    err << "dtsched: stored run " << id << " in " << store.data_dir().string() << '\n';
    emit(cfg, out, render_log(cfg, log));
    return kExitOk;
  });
}

int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const bool vs_benchmark = cfg.against.has_value();
    if (vs_benchmark && *cfg.against != "benchmark") {
      throw Error(ErrorCode::kSpecInvalid, "--against: only 'benchmark' is supported");
    }
    const std::size_t want = vs_benchmark ? 1 : 2;
    if (cfg.run_ids.size() > want || (!vs_benchmark && cfg.run_ids.size() != 2)) {
      throw Error(ErrorCode::kSpecInvalid, vs_benchmark ? "compare --against benchmark takes at most one run id"
                                                        : "compare needs two run ids (or --against benchmark)");
    }

    RunLog a;
    RunLog b;
    std::string name_a;
    std::string name_b;
    if (!vs_benchmark) {
      const HistoryStore store(cfg.data_dir);
      a = store.load_run(cfg.run_ids[0]);
      b = store.load_run(cfg.run_ids[1]);
      name_a = "run" + std::to_string(cfg.run_ids[0]);
      name_b = "run" + std::to_string(cfg.run_ids[1]);
    } else if (!cfg.run_ids.empty()) {
      const HistoryStore store(cfg.data_dir);
      a = store.load_run(cfg.run_ids[0]);
      name_a = "run" + std::to_string(cfg.run_ids[0]);
      const PriceSchedule prices = cfg.prices_path.empty() ? a.prices : load_prices(cfg.prices_path);
      b = run_benchmark(a.meta.machine, a.meta.order, prices);
      name_b = "benchmark";
    } else {
      const Inputs in = load_inputs(cfg);
      const PtaModel model = init_model(in.machine, in.order);
      require_minimum_coverage(model, in.prices);
      LookaheadConfig lcfg;
      lcfg.window = cfg.window;
      a = run_llp(in.machine, in.order, in.prices, lcfg, in.disturbances);
      b = run_benchmark(in.machine, in.order, in.prices);
      name_a = "llp";
      name_b = "benchmark";
    }

    const ComparisonReport report = compare(a, b, name_a, name_b);
    emit(cfg, out, report_json(report).dump(2) + "\n");

    if (cfg.format == OutputFormat::kCsv) {
      if (!cfg.out_path) throw Error(ErrorCode::kSpecInvalid, "--format csv needs --out to place the timeline files");
      for (const auto& [name, rows] : report.timeline) {
        auto path = *cfg.out_path;
        path.replace_filename(cfg.out_path->stem().string() + "_" + name + ".csv");
        write_text_file(path, timeline_csv(rows));
      }
    }
    return kExitOk;
  });
}

}  // namespace dtsched::cli
