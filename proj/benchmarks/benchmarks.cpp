#include <benchmark/benchmark.h>

#include "flexd/analytics.hpp"
#include "flexd/montecarlo.hpp"
#include "flexd/scenario.hpp"
#include "flexd/units.hpp"

namespace {

using namespace flexd;

Scenario bench_scenario() {
  Scenario sc;
  sc.rf = {25.0e9, 500.0e6};
  sc.noise_power_w = dbm_to_watts(-115.0);
  sc.fading = {1.56, 1.3};
  sc.timeline = {1e-3, 1e-3, 1};
  sc.isl = {db_to_linear(38.5), db_to_linear(38.5), dbw_to_watts(10.0)};
  sc.downlink = {db_to_linear(35.0), db_to_linear(5.0), dbw_to_watts(10.0)};
  sc.reference_power_w = sc.isl.power_w;
  GeometryConfig geo;
  geo.links.push_back({NodeId{NodeKind::Satellite, 0}, NodeId{NodeKind::Satellite, 1},
                       LinkGeometry::Explicit{{800e3}}});
  geo.links.push_back({NodeId{NodeKind::Satellite, 0}, NodeId{NodeKind::Ground, 0},
                       LinkGeometry::Explicit{{1000e3}}});
  geo.links.push_back({NodeId{NodeKind::Satellite, 1}, NodeId{NodeKind::Ground, 1},
                       LinkGeometry::Explicit{{1100e3}}});
  sc.track = build_track(geo, sc.timeline);
  sc.interference[0] = {{db_to_linear(44.0), db_to_linear(40.0)}};
  sc.interference[1] = {{db_to_linear(42.0)}};
  sc.backlog_bits[0] = {9e5};
  sc.backlog_bits[1] = {2.2e6};
  sc.schemes = {Scheme::FlexD};
  sc.plan = {100'000, 7, 1};
  sc.rsi_power_w = dbm_to_watts(-120.0);
  return sc;
}

void BM_MarcumQ1(benchmark::State& state) {
  double a = 0.1;
  for (auto _ : state) {
    a = a >= 10.0 ? 0.1 : a + 0.1;
    benchmark::DoNotOptimize(marcum_q1(a, 0.7 * a + 0.5));
  }
}
BENCHMARK(BM_MarcumQ1);

void BM_RicianPowerCdf(benchmark::State& state) {
  const RicianParams fading{1.56, 1.3};
  double x = 0.0;
  for (auto _ : state) {
    x = x >= 50.0 ? 0.0 : x + 0.25;
    benchmark::DoNotOptimize(rician_power_cdf(25.0, fading, x));
  }
}
BENCHMARK(BM_RicianPowerCdf);

void BM_OutageClosedForm(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  const OutageInputs outage = sc.resolve_slot(0).outage;
  double zeta = 0.0;
  for (auto _ : state) {
    zeta = zeta >= 12.0 ? 0.0 : zeta + 0.05;
    benchmark::DoNotOptimize(outage_probability(zeta, outage));
  }
}
BENCHMARK(BM_OutageClosedForm);

void BM_MeanSystemSinr(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  const OutageInputs outage = sc.resolve_slot(0).outage;
  SeriesControls ctl;
  ctl.truncation = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_system_sinr(outage, ctl));
  }
}
BENCHMARK(BM_MeanSystemSinr)->Arg(10)->Arg(20)->Arg(40);

void BM_SimulateSlot(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Rng rng = Rng::for_stream(1, trial++);
    benchmark::DoNotOptimize(simulate_slot(sc, 0, Scheme::FlexD, rng));
  }
}
BENCHMARK(BM_SimulateSlot);

void BM_EstimateOutage(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  const TrialPlan plan{static_cast<std::uint64_t>(state.range(0)), 7, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_outage(sc, 2.0, plan));
  }
}
BENCHMARK(BM_EstimateOutage)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
