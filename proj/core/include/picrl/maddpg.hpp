#pragma once

#include <memory>

#include "picrl/actor.hpp"
#include "picrl/critic.hpp"
#include "picrl/replay.hpp"

namespace picrl::learner {

struct JointDims {
  std::size_t agents = 0;
  std::size_t obs_dim = 0;
  std::size_t act_dim = 5;
};

// Online and target networks plus optimizer state for one agent.
struct AgentNets {
  Actor actor;
  Actor actor_target;
  std::unique_ptr<critics::Critic> critic;
  std::unique_ptr<critics::Critic> critic_target;
  numerics::AdamState actor_opt;
  numerics::AdamState critic_opt;

  AgentNets(std::size_t obs_dim, std::size_t act_dim, std::size_t hidden,
            critics::CriticKind kind, const critics::CriticConfig& critic_cfg, Rng& rng);
};

// theta_target <- tau * theta + (1 - tau) * theta_target, per parameter.
void soft_update(numerics::ParamSet& target, const numerics::ParamSet& online, double tau);

// One critic step for agent i: targets use the target actors on the next
// observations and the target critic; squared TD error, one Adam step.
// Returns the pre-step loss.
double critic_update(std::size_t agent, const Batch& batch, std::vector<AgentNets>& nets,
                     const JointDims& dims, double gamma, double lr);

// One policy step for agent i: replaces agent i's batch actions with fresh
// policy outputs, ascends mean Q through the critic's action gradient.
// Returns the pre-step objective estimate.
double actor_update(std::size_t agent, const Batch& batch, std::vector<AgentNets>& nets,
                    const JointDims& dims, double lr);

// Applies an independent random agent permutation to every transition,
// consistently across observations, actions, rewards and next observations
// (the MLP data-augmentation baseline).
void shuffle_augment(Batch& batch, const JointDims& dims, Rng& rng);

}  // namespace picrl::learner
