#pragma once

#include <filesystem>

#include "picrl/config.hpp"
#include "picrl/maddpg.hpp"
#include "picrl/manifest.hpp"

namespace picrl::learner {

struct TrainResult {
  io::RunManifest manifest;
  std::filesystem::path run_dir;
};

// Task instance with any config overrides (episode length) applied.
scenarios::TaskSpec task_for(const config::TrainConfig& cfg);

critics::CriticConfig critic_config_for(const config::TrainConfig& cfg,
                                        const scenarios::TaskSpec& spec);

std::vector<AgentNets> build_agent_nets(const config::TrainConfig& cfg,
                                        const scenarios::TaskSpec& spec, Rng& rng);

// Actors with the run's architecture, ready for a checkpoint load.
std::vector<Actor> build_actors(const config::TrainConfig& cfg, const scenarios::TaskSpec& spec);

// Full MADDPG training loop: exploration rollouts into the replay ring,
// periodic critic/actor updates with target soft updates, per-episode lr and
// noise annealing, ten evenly spaced policy checkpoints over the tail of the
// run, metrics CSV and manifest in cfg.out.
TrainResult train(const config::TrainConfig& cfg);

}  // namespace picrl::learner
