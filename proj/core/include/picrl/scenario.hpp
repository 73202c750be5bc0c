#pragma once

#include <array>
#include <vector>

#include "picrl/rng.hpp"
#include "picrl/task.hpp"
#include "picrl/world.hpp"

namespace picrl::scenarios {

// Entity index ranges inside a spawned world:
//   [0, N) learning agents, [N, N+M) scripted preys, then the push ball
//   (coop_push only), then the landmarks.
std::size_t ball_index(const TaskSpec& spec);
std::size_t landmark_begin(const TaskSpec& spec);

// Places agents, preys, ball and landmarks uniformly in [-1,1]^2 with zero
// velocities; per-group physical attributes applied.
engine::World spawn(const TaskSpec& spec, Rng& rng);

// Fixed-length observation for one learning agent (layout in TaskSpec::obs).
// The first two entries are always the agent's own absolute position, which
// k-nearest-neighbor critics rely on.
std::vector<double> observe(const engine::World& world, const TaskSpec& spec, std::size_t agent);

// num_agents x obs_dim matrix of all learning agents' observations.
numerics::Matrix observe_all(const engine::World& world, const TaskSpec& spec);

// One shared scalar computed once and broadcast to every cooperative agent
// (for prey_predator: to every predator).
std::vector<double> global_reward(const engine::World& world, const TaskSpec& spec);

// Scripted flee policy: maximum-magnitude force directly away from the
// nearest predator (ties to the lower predator index); no-op without one.
std::array<double, kActionDim> prey_action(const engine::World& world, const TaskSpec& spec,
                                           std::size_t prey_index);

// Fills the prey rows [N, N+M) of a joint action.
void fill_prey_actions(const engine::World& world, const TaskSpec& spec,
                       engine::JointAction& actions);

}  // namespace picrl::scenarios
