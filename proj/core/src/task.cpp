#include "picrl/task.hpp"

#include "picrl/error.hpp"

namespace picrl::scenarios {

Task task_from_name(std::string_view name) {
  if (name == "coop_nav") return Task::kCoopNav;
  if (name == "prey_predator") return Task::kPreyPredator;
  if (name == "coop_push") return Task::kCoopPush;
  if (name == "hetero_nav") return Task::kHeteroNav;
  throw ConfigError("unknown task '" + std::string(name) +
                    "' (expected coop_nav, prey_predator, coop_push or hetero_nav)");
}

std::string task_name(Task task) {
  switch (task) {
    case Task::kCoopNav: return "coop_nav";
    case Task::kPreyPredator: return "prey_predator";
    case Task::kCoopPush: return "coop_push";
    case Task::kHeteroNav: return "hetero_nav";
  }
  return "?";
}

std::size_t TaskSpec::group_of(std::size_t agent) const {
  std::size_t base = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    base += groups[g].count;
    if (agent < base) return g;
  }
  throw ConfigError("group_of: agent index " + std::to_string(agent) + " out of range");
}

namespace {

// Visible-neighbor count for the navigation tasks (2 for small instances,
// 5 from six agents up).
std::size_t nav_neighbors(std::size_t n) { return n < 6 ? 2 : 5; }

ObsLayout nav_layout(std::size_t n) {
  const std::size_t k = nav_neighbors(n);
  // k+1 landmark slots plus k agent slots lands on the published sizes
  // (14 for N=3, 26 from N=6 up).
  return ObsLayout{k + 1, k, 0, false};
}

ObsLayout push_layout(std::size_t n) {
  const std::size_t k = n < 6 ? 2 : (n < 15 ? 5 : 10);
  return ObsLayout{2, k, 0, false};  // the two landmark slots are target, ball
}

ObsLayout prey_layout(std::size_t n) {
  // Slot counts pinned per published totals: 16 / 28 / 34 observation dims.
  if (n < 6) return ObsLayout{1, 1, 2, true};
  if (n < 15) return ObsLayout{2, 4, 3, true};
  return ObsLayout{5, 5, 5, false};
}

}  // namespace

TaskSpec TaskSpec::make(Task task, std::size_t n_agents) {
  if (n_agents < 2) throw ConfigError("task " + task_name(task) + ": needs at least 2 agents");
  TaskSpec spec;
  spec.task = task;
  spec.num_agents = n_agents;
  spec.episode_length = n_agents <= 30 ? 25 : 50;

  switch (task) {
    case Task::kCoopNav:
      spec.groups = {GroupSpec{n_agents, 0.15, 1.0, 0.0, 1.0}};
      spec.num_landmarks = n_agents;
      spec.obs = nav_layout(n_agents);
      spec.collision_penalty = 1.0;
      break;
    case Task::kHeteroNav: {
      if (n_agents % 2 != 0)
        throw ConfigError("task hetero_nav: agent count must be even (two groups of N/2)");
      const std::size_t half = n_agents / 2;
      spec.groups = {GroupSpec{half, 0.05, 1.3, 0.0, 1.0},   // small and fast
                     GroupSpec{half, 0.15, 0.7, 0.0, 1.0}};  // big and slow
      spec.num_landmarks = n_agents;
      spec.obs = nav_layout(n_agents);
      spec.collision_penalty = 1.0;
      spec.cross_group_penalty = 5.0;
      break;
    }
    case Task::kPreyPredator:
      spec.groups = {GroupSpec{n_agents, 0.075, 3.0, 1.0, 1.0}};
      spec.num_preys = std::max<std::size_t>(1, n_agents / 3);
      spec.num_landmarks = 2;
      spec.landmark_radius = 0.2;
      spec.landmark_collidable = true;
      spec.obs = prey_layout(n_agents);
      spec.capture_reward = 10.0;
      break;
    case Task::kCoopPush:
      spec.groups = {GroupSpec{n_agents, 0.10, 1.0, 0.0, 1.0}};
      spec.num_landmarks = 1;
      spec.obs = push_layout(n_agents);
      spec.ball_distance_weight = 1.0;
      spec.agent_ball_weight = 0.1;
      break;
  }

  const std::size_t max_slots =
      std::max({spec.obs.landmark_slots, spec.obs.agent_slots, spec.obs.prey_slots});
  if (max_slots > 10) throw ConfigError("observation layout exceeds ten visible neighbors");
  return spec;
}

}  // namespace picrl::scenarios
