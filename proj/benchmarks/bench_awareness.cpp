#include <benchmark/benchmark.h>

#include "awareness/attention.hpp"
#include "awareness/config_search.hpp"
#include "awareness/power.hpp"
#include "awareness/simulation.hpp"
#include "awareness/timeline.hpp"

using awareness::Candidate;
using awareness::Directional;
using awareness::Lateral;
using awareness::Situation;

static void BM_BuildMlam(benchmark::State& state) {
  const Situation situation(Directional::Forward, Lateral::TurnLeft);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mlam(situation));
  }
}
BENCHMARK(BM_BuildMlam);

static void BM_BuildForest(benchmark::State& state) {
  const auto fixture = awareness::unicaragil_fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_forest(fixture.modules));
  }
}
BENCHMARK(BM_BuildForest);

static void BM_Optimize(benchmark::State& state) {
  const auto fixture = awareness::unicaragil_fixture();
  const auto mlam =
      build_mlam(Situation(Directional::Maneuvering, Lateral::None));
  const Candidate current{"FL"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize(mlam, fixture.modules, current));
  }
}
BENCHMARK(BM_Optimize);

static void BM_RunSimulation(benchmark::State& state) {
  const auto fixture = awareness::unicaragil_fixture();
  const auto timeline = awareness::generate_reference_route();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        awareness::run_simulation(timeline, fixture.modules, fixture.layouts));
  }
}
BENCHMARK(BM_RunSimulation)->Unit(benchmark::kMillisecond);

static void BM_IntegrateEnergy(benchmark::State& state) {
  const auto fixture = awareness::unicaragil_fixture();
  const auto trace = awareness::run_simulation(
      awareness::generate_reference_route(), fixture.modules, fixture.layouts);
  const auto model = awareness::calibrate_from_trip(0.171, 555.0, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(awareness::integrate_energy_kwh(trace, model));
  }
}
BENCHMARK(BM_IntegrateEnergy);

BENCHMARK_MAIN();
