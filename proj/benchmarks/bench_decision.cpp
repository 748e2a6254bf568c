#include <benchmark/benchmark.h>

#include "dtsched/decision.hpp"
#include "dtsched/run_log.hpp"
#include "dtsched/tariff.hpp"

using namespace dtsched;

namespace {

MachineSpec machine(int capacity) {
  MachineSpec m;
  m.capacity = capacity;
  m.processing_time = 1.0;
  m.setup_time = 0.2;
  for (int b = 0; b <= capacity; ++b) m.power_mw.push_back(0.5 + 0.2 * b);
  m.inventory_capacity = 1;
  m.allocated_inventory = 1;
  return m;
}

PtaModel model(int capacity, int demand) {
  OrderSpec o;
  o.start_time = 8.0;
  o.demand = demand;
  return PtaModel(machine(capacity), o);
}

// Hourly tariff with a cheap overnight block.
PriceSchedule hourly(Hours from, int hours) {
  std::vector<PriceSegment> segs;
  for (int h = 0; h < hours; ++h) {
    const double t = from + h;
    segs.push_back({t, t + 1.0, (h % 24) < 6 ? 30.0 : 60.0 + 5.0 * (h % 7)});
  }
  return PriceSchedule(segs);
}

void BM_LookaheadTree(benchmark::State& state) {
  const auto m = model(3, 40);
  const int window = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lookahead_tree(m, 0, std::nullopt, window));
  state.SetLabel("W=" + std::to_string(window));
}
BENCHMARK(BM_LookaheadTree)->DenseRange(1, 6);

void BM_LlpStep(benchmark::State& state) {
  const auto m = model(3, 40);
  const auto prices = hourly(8.0, 96);
  LookaheadConfig cfg;
  cfg.window = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(llp_step(m, 0, std::nullopt, 0.0, prices, cfg));
}
BENCHMARK(BM_LlpStep)->DenseRange(1, 5);

void BM_LlpRun(benchmark::State& state) {
  const auto m = model(2, static_cast<int>(state.range(0)));
  const auto prices = hourly(8.0, 96);
  LookaheadConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(llp_run(m, prices, cfg));
}
BENCHMARK(BM_LlpRun)->Arg(7)->Arg(20)->Arg(40);

void BM_OpenLoop(benchmark::State& state) {
  const auto m = model(2, static_cast<int>(state.range(0)));
  const auto prices = hourly(8.0, 48);
  for (auto _ : state) benchmark::DoNotOptimize(open_loop_optimal(m, prices));
}
BENCHMARK(BM_OpenLoop)->DenseRange(4, 10, 2);

void BM_TransitionEnergyCost(benchmark::State& state) {
  const auto prices = hourly(0.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transition_energy_cost(1.0, 0.3, state.range(0) - 0.3, prices));
}
BENCHMARK(BM_TransitionEnergyCost)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
