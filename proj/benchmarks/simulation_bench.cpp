#include "voxsim/oracle.hpp"
#include "voxsim/scenes.hpp"
#include "voxsim/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace voxsim;

// Steps of a free solid cube, reported per voxel so sizes compare directly.
static void BM_CubeStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Simulation sim(scenes::cube(n));
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.counters["voxels"] = sim.active_voxel_count();
  state.counters["voxel_iter_per_s"] =
      benchmark::Counter(static_cast<double>(state.iterations()) * sim.active_voxel_count(), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CubeStep)->DenseRange(5, 16, 1)->Unit(benchmark::kMicrosecond);

static void BM_ClapperScheme(benchmark::State& state) {
  Scene scene = scenes::clapper();
  scene.sim.collision_scheme = static_cast<CollisionScheme>(state.range(0));
  Simulation sim(scene);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetLabel(std::string(to_string(scene.sim.collision_scheme)));
  state.counters["rebuilds"] = static_cast<double>(sim.pair_rebuilds());
}
BENCHMARK(BM_ClapperScheme)->DenseRange(0, 3, 1)->Unit(benchmark::kMicrosecond);

static void BM_DirectStiffness(benchmark::State& state) {
  const Scene scene = scenes::thick_cantilever();
  for (auto _ : state) benchmark::DoNotOptimize(solve_direct_stiffness(scene.object, scene.environment));
}
BENCHMARK(BM_DirectStiffness)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
