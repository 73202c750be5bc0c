#include <benchmark/benchmark.h>

#include "picrl/critic.hpp"

namespace {

using namespace picrl;

critics::CriticConfig config_for(std::size_t agents) {
  critics::CriticConfig cfg;
  cfg.num_agents = agents;
  cfg.obs_dim = 26;
  cfg.act_dim = 5;
  cfg.hidden = 128;
  return cfg;
}

numerics::Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  numerics::Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform(-1.0, 1.0);
  return m;
}

void BM_PicForwardBackward(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t batch = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  critics::PicCritic critic(config_for(n), rng);
  const auto obs = random_matrix(batch, n * 26, rng);
  const auto act = random_matrix(batch, n * 5, rng);
  const numerics::Matrix upstream(batch, 1, 1.0 / static_cast<double>(batch));
  for (auto _ : state) {
    benchmark::DoNotOptimize(critic.forward(obs, act));
    critic.params().zero_grads();
    benchmark::DoNotOptimize(critic.backward(upstream));
  }
}

void BM_MlpForwardBackward(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t batch = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  critics::MlpCritic critic(config_for(n), rng);
  const auto obs = random_matrix(batch, n * 26, rng);
  const auto act = random_matrix(batch, n * 5, rng);
  const numerics::Matrix upstream(batch, 1, 1.0 / static_cast<double>(batch));
  for (auto _ : state) {
    benchmark::DoNotOptimize(critic.forward(obs, act));
    critic.params().zero_grads();
    benchmark::DoNotOptimize(critic.backward(upstream));
  }
}

}  // namespace

BENCHMARK(BM_PicForwardBackward)->Args({3, 1024})->Args({30, 256})->Args({100, 64});
BENCHMARK(BM_MlpForwardBackward)->Args({3, 1024})->Args({30, 256})->Args({100, 64});
