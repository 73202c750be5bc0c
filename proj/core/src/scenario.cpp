#include "picrl/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::scenarios {

namespace {

double dist(const engine::World& w, std::size_t a, std::size_t b) {
  const double dx = w.pos_x[a] - w.pos_x[b];
  const double dy = w.pos_y[a] - w.pos_y[b];
  return std::sqrt(dx * dx + dy * dy);
}

bool in_contact(const engine::World& w, std::size_t a, std::size_t b) {
  return dist(w, a, b) < w.radius[a] + w.radius[b];
}

// Candidate entity ids sorted by (distance to `from`, id); the leading
// `slots` of them fill an observation block.
std::vector<std::size_t> nearest(const engine::World& w, std::size_t from,
                                 std::vector<std::size_t> candidates, std::size_t slots) {
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    const double da = dist(w, from, a), db = dist(w, from, b);
    if (da != db) return da < db;
    return a < b;
  });
  if (candidates.size() > slots) candidates.resize(slots);
  return candidates;
}

void push_relative_positions(const engine::World& w, std::size_t from,
                             const std::vector<std::size_t>& ids, std::size_t slots,
                             bool with_velocity, std::vector<double>& out) {
  for (std::size_t s = 0; s < slots; ++s) {
    if (s < ids.size()) {
      const std::size_t j = ids[s];
      out.push_back(w.pos_x[j] - w.pos_x[from]);
      out.push_back(w.pos_y[j] - w.pos_y[from]);
      if (with_velocity) {
        out.push_back(w.vel_x[j] - w.vel_x[from]);
        out.push_back(w.vel_y[j] - w.vel_y[from]);
      }
    } else {
      out.insert(out.end(), with_velocity ? 4 : 2, 0.0);  // zero-padded slot
    }
  }
}

}  // namespace

std::size_t ball_index(const TaskSpec& spec) { return spec.num_agents + spec.num_preys; }

std::size_t landmark_begin(const TaskSpec& spec) {
  return spec.num_agents + spec.num_preys + (spec.task == Task::kCoopPush ? 1 : 0);
}

engine::World spawn(const TaskSpec& spec, Rng& rng) {
  engine::World world;
  world.num_actors = spec.num_agents + spec.num_preys;
  auto draw = [&rng]() { return rng.uniform(-1.0, 1.0); };

  for (const GroupSpec& g : spec.groups) {
    const double vmax = g.max_speed > 0.0 ? g.max_speed : engine::kNoSpeedLimit;
    for (std::size_t i = 0; i < g.count; ++i) {
      const double x = draw(), y = draw();
      world.add_entity(x, y, g.radius, g.mass, true, true, g.sensitivity, vmax);
    }
  }
  for (std::size_t i = 0; i < spec.num_preys; ++i) {
    const double x = draw(), y = draw();
    world.add_entity(x, y, spec.prey_radius, 1.0, true, true, spec.prey_sensitivity,
                     spec.prey_max_speed);
  }
  if (spec.task == Task::kCoopPush) {
    const double x = draw(), y = draw();
    world.add_entity(x, y, spec.ball_radius, spec.ball_mass, true, true);
  }
  for (std::size_t i = 0; i < spec.num_landmarks; ++i) {
    const double x = draw(), y = draw();
    world.add_entity(x, y, spec.landmark_radius, 1.0, false, spec.landmark_collidable);
  }
  world.validate();
  return world;
}

std::vector<double> observe(const engine::World& world, const TaskSpec& spec, std::size_t agent) {
  if (agent >= spec.num_agents)
    throw ConfigError("observe: agent index " + std::to_string(agent) + " out of range");
  std::vector<double> out;
  out.reserve(spec.obs_dim());
  out.push_back(world.pos_x[agent]);
  out.push_back(world.pos_y[agent]);
  out.push_back(world.vel_x[agent]);
  out.push_back(world.vel_y[agent]);

  const std::size_t lm0 = landmark_begin(spec);
  if (spec.task == Task::kCoopPush) {
    // Slot order is fixed: target landmark then ball.
    push_relative_positions(world, agent, {lm0}, 1, false, out);
    push_relative_positions(world, agent, {ball_index(spec)}, 1, false, out);
  } else {
    std::vector<std::size_t> landmarks(spec.num_landmarks);
    for (std::size_t i = 0; i < spec.num_landmarks; ++i) landmarks[i] = lm0 + i;
    push_relative_positions(world, agent, nearest(world, agent, std::move(landmarks),
                                                  spec.obs.landmark_slots),
                            spec.obs.landmark_slots, false, out);
  }

  std::vector<std::size_t> others;
  others.reserve(spec.num_agents - 1);
  for (std::size_t j = 0; j < spec.num_agents; ++j)
    if (j != agent) others.push_back(j);
  push_relative_positions(world, agent, nearest(world, agent, std::move(others),
                                                spec.obs.agent_slots),
                          spec.obs.agent_slots, false, out);

  if (spec.obs.prey_slots > 0) {
    std::vector<std::size_t> preys(spec.num_preys);
    for (std::size_t i = 0; i < spec.num_preys; ++i) preys[i] = spec.num_agents + i;
    push_relative_positions(world, agent, nearest(world, agent, std::move(preys),
                                                  spec.obs.prey_slots),
                            spec.obs.prey_slots, spec.obs.prey_velocity, out);
  }
  return out;
}

numerics::Matrix observe_all(const engine::World& world, const TaskSpec& spec) {
  numerics::Matrix m(spec.num_agents, spec.obs_dim());
  for (std::size_t i = 0; i < spec.num_agents; ++i) {
    const std::vector<double> o = observe(world, spec, i);
    std::copy(o.begin(), o.end(), m.row_ptr(i));
  }
  return m;
}

std::vector<double> global_reward(const engine::World& world, const TaskSpec& spec) {
  double shared = 0.0;
  switch (spec.task) {
    case Task::kCoopNav:
    case Task::kHeteroNav: {
      const std::size_t lm0 = landmark_begin(spec);
      for (std::size_t l = 0; l < spec.num_landmarks; ++l) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < spec.num_agents; ++i)
          best = std::min(best, dist(world, lm0 + l, i));
        shared -= best;
      }
      for (std::size_t i = 0; i < spec.num_agents; ++i)
        for (std::size_t j = i + 1; j < spec.num_agents; ++j)
          if (in_contact(world, i, j)) {
            shared -= spec.collision_penalty;
            if (spec.cross_group_penalty != 0.0 && spec.group_of(i) != spec.group_of(j))
              shared -= spec.cross_group_penalty;
          }
      break;
    }
    case Task::kPreyPredator: {
      for (std::size_t i = 0; i < spec.num_agents; ++i)
        for (std::size_t p = 0; p < spec.num_preys; ++p)
          if (in_contact(world, i, spec.num_agents + p)) shared += spec.capture_reward;
      break;
    }
    case Task::kCoopPush: {
      const std::size_t ball = ball_index(spec);
      const std::size_t target = landmark_begin(spec);
      shared -= spec.ball_distance_weight * dist(world, ball, target);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < spec.num_agents; ++i)
        best = std::min(best, dist(world, i, ball));
      shared -= spec.agent_ball_weight * best;
      break;
    }
  }
  return std::vector<double>(spec.num_agents, shared);
}

std::array<double, kActionDim> prey_action(const engine::World& world, const TaskSpec& spec,
                                           std::size_t prey_index) {
  std::array<double, kActionDim> action{};
  if (spec.task != Task::kPreyPredator)
    throw ConfigError("prey_action: task " + task_name(spec.task) + " has no preys");
  if (prey_index >= spec.num_preys)
    throw ConfigError("prey_action: prey index " + std::to_string(prey_index) + " out of range");
  if (spec.num_agents == 0) return action;  // degenerate: nobody to flee from

  const std::size_t self = spec.num_agents + prey_index;
  std::size_t nearest_pred = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.num_agents; ++i) {
    const double d = dist(world, self, i);
    if (d < best) {  // strict: ties keep the lower index
      best = d;
      nearest_pred = i;
    }
  }
  const double ux = world.pos_x[self] - world.pos_x[nearest_pred];
  const double uy = world.pos_y[self] - world.pos_y[nearest_pred];
  const double m = std::max(std::abs(ux), std::abs(uy));
  if (m <= 0.0) return action;  // coincident with the predator
  action[engine::JointAction::kRight] = std::max(ux, 0.0) / m;
  action[engine::JointAction::kLeft] = std::max(-ux, 0.0) / m;
  action[engine::JointAction::kForward] = std::max(uy, 0.0) / m;
  action[engine::JointAction::kBackward] = std::max(-uy, 0.0) / m;
  return action;
}

void fill_prey_actions(const engine::World& world, const TaskSpec& spec,
                       engine::JointAction& actions) {
  for (std::size_t p = 0; p < spec.num_preys; ++p) {
    const auto a = prey_action(world, spec, p);
    actions.set_row(spec.num_agents + p, a.data());
  }
}

}  // namespace picrl::scenarios
