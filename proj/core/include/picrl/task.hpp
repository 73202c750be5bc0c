#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace picrl::scenarios {

enum class Task { kCoopNav, kPreyPredator, kCoopPush, kHeteroNav };

Task task_from_name(std::string_view name);  // throws ConfigError on unknown name
std::string task_name(Task task);

// Physical attributes shared by one group of agents.
struct GroupSpec {
  std::size_t count = 0;
  double radius = 0.15;
  double sensitivity = 1.0;
  double max_speed = 0.0;  // 0 = unlimited
  double mass = 1.0;
};

// Per-agent observation layout. Every block is zero-padded when fewer
// entities exist than slots, which keeps the dimension fixed:
//   [own pos (2), own vel (2),
//    landmark_slots nearest landmarks (2 each; for coop_push the two slots
//    are the target landmark then the ball),
//    agent_slots nearest same-role agents (2 each),
//    prey_slots nearest preys (2 each, 4 with velocity)]
// Slot counts are pinned so the totals reproduce the published observation
// sizes for every (task, N) in the benchmark suite.
struct ObsLayout {
  std::size_t landmark_slots = 0;
  std::size_t agent_slots = 0;
  std::size_t prey_slots = 0;
  bool prey_velocity = false;

  std::size_t dimension() const {
    return 4 + 2 * landmark_slots + 2 * agent_slots + (prey_velocity ? 4 : 2) * prey_slots;
  }
};

// Complete scenario definition for one benchmark task instance.
struct TaskSpec {
  Task task = Task::kCoopNav;
  std::size_t num_agents = 0;  // learning agents
  std::size_t num_preys = 0;   // scripted actors (prey_predator only)
  std::size_t num_landmarks = 0;
  std::vector<GroupSpec> groups;  // partition of num_agents
  ObsLayout obs;
  std::size_t episode_length = 25;

  // Reward coefficients.
  double collision_penalty = 0.0;    // per agent-agent contact (nav tasks)
  double cross_group_penalty = 0.0;  // per small-big contact (hetero_nav)
  double capture_reward = 0.0;       // per predator-prey contact
  double ball_distance_weight = 0.0;
  double agent_ball_weight = 0.0;

  // Non-agent physical attributes.
  double landmark_radius = 0.05;
  bool landmark_collidable = false;
  double ball_radius = 0.25;
  double ball_mass = 4.0;
  double prey_radius = 0.05;
  double prey_sensitivity = 4.0;
  double prey_max_speed = 1.3;

  std::size_t obs_dim() const { return obs.dimension(); }
  std::size_t num_groups() const { return groups.size(); }
  std::size_t group_of(std::size_t agent) const;
  bool heterogeneous() const { return groups.size() > 1; }

  // Agents per the published configurations; throws ConfigError on invalid N.
  static TaskSpec make(Task task, std::size_t n_agents);
};

inline constexpr std::size_t kActionDim = 5;

}  // namespace picrl::scenarios
