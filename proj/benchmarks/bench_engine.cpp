#include <benchmark/benchmark.h>

#include "picrl/physics.hpp"
#include "picrl/scenario.hpp"

namespace {

using namespace picrl;

engine::World make_world(std::size_t agents, std::uint64_t seed) {
  const auto spec = scenarios::TaskSpec::make(scenarios::Task::kCoopNav, agents);
  Rng rng(seed);
  return scenarios::spawn(spec, rng);
}

void BM_CollisionVectorized(benchmark::State& state) {
  engine::World world = make_world(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(engine::collision_forces(world));
}

void BM_CollisionOracle(benchmark::State& state) {
  engine::World world = make_world(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(engine::reference_collision_oracle(world));
}

void BM_WorldStep(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  engine::World world = make_world(n, 42);
  engine::JointAction actions(world.num_actors);
  Rng rng(7);
  for (std::size_t i = 0; i < world.num_actors; ++i)
    for (std::size_t c = 1; c < engine::JointAction::kChannels; ++c)
      actions(i, c) = rng.uniform();
  for (auto _ : state) engine::step(world, actions);
}

}  // namespace

BENCHMARK(BM_CollisionVectorized)->Arg(10)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_CollisionOracle)->Arg(10)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_WorldStep)->Arg(10)->Arg(100)->Arg(200);
