#include "picrl/physics.hpp"

#include <cmath>
#include <iostream>
#include <vector>

#include "picrl/error.hpp"

namespace picrl::engine {

namespace {

// Stable form of margin * log(1 + exp((rsum - d) / margin)); the naive
// expression overflows for deep overlaps.
double penetration(double rsum, double d, double margin) {
  const double z = (rsum - d) / margin;
  const double soft = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return margin * soft;
}

// Contact force exerted on entity a by entity b, along the center line.
void contact_force(const World& w, std::size_t a, std::size_t b, double& fx, double& fy) {
  const double dx = w.pos_x[a] - w.pos_x[b];
  const double dy = w.pos_y[a] - w.pos_y[b];
  double d = std::sqrt(dx * dx + dy * dy);
  if (d < w.physics.distance_floor) d = w.physics.distance_floor;
  const double pen = penetration(w.radius[a] + w.radius[b], d, w.physics.contact_margin);
  const double f = w.physics.contact_force * pen / d;
  fx = f * dx;
  fy = f * dy;
}

// Beyond rsum + kContactCutoffMargins * margin the contact tail is below
// 1e-13 per pair and is dropped by the bulk path.
constexpr double kContactCutoffMargins = 30.0;

}  // namespace

numerics::Matrix action_to_force(const JointAction& actions, World& world) {
  if (actions.actors() != world.num_actors)
    throw DimensionError("action_to_force: " + std::to_string(actions.actors()) +
                         " action rows for " + std::to_string(world.num_actors) + " actors");
  numerics::Matrix force(world.num_actors, 2);
  for (std::size_t i = 0; i < world.num_actors; ++i) {
    double ch[JointAction::kChannels];
    for (std::size_t c = 0; c < JointAction::kChannels; ++c) {
      double v = actions(i, c);
      if (v < 0.0 || v > 1.0) {
        if (!world.clamp_warned) {
          std::cerr << "picrl: action entry " << v << " for actor " << i
                    << " outside [0,1]; clamping (reported once per episode)\n";
          world.clamp_warned = true;
        }
        v = v < 0.0 ? 0.0 : 1.0;
      }
      ch[c] = v;
    }
    const double s = world.sensitivity[i];
    force(i, 0) = s * (ch[JointAction::kRight] - ch[JointAction::kLeft]);
    force(i, 1) = s * (ch[JointAction::kForward] - ch[JointAction::kBackward]);
  }
  return force;
}

numerics::Matrix collision_forces(const World& world) {
  const std::size_t e = world.entities();
  numerics::Matrix force(e, 2);

  // Compact the collidable entities so the pair sweep runs on contiguous data.
  std::vector<std::size_t> ids;
  ids.reserve(e);
  for (std::size_t i = 0; i < e; ++i)
    if (world.collidable[i]) ids.push_back(i);
  const std::size_t n = ids.size();
  if (n < 2) return force;

  std::vector<double> cx(n), cy(n), cr(n);
  for (std::size_t k = 0; k < n; ++k) {
    cx[k] = world.pos_x[ids[k]];
    cy[k] = world.pos_y[ids[k]];
    cr[k] = world.radius[ids[k]];
  }

  const double wmargin = kContactCutoffMargins * world.physics.contact_margin;
  std::vector<double> d2(n), cut2(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = cx[i], yi = cy[i], ri = cr[i];
    // Bulk pass: squared distances and squared cutoffs for every j > i.
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xi - cx[j];
      const double dy = yi - cy[j];
      d2[j] = dx * dx + dy * dy;
      const double cut = ri + cr[j] + wmargin;
      cut2[j] = cut * cut;
    }
    // Exact contact profile only near contact; applied with equal magnitude
    // and opposite sign so the pair cancels exactly.
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d2[j] >= cut2[j]) continue;
      const std::size_t a = ids[i], b = ids[j];
      double fx, fy;
      contact_force(world, a, b, fx, fy);
      force(a, 0) += fx;
      force(a, 1) += fy;
      force(b, 0) -= fx;
      force(b, 1) -= fy;
    }
  }
  return force;
}

numerics::Matrix reference_collision_oracle(const World& world) {
  const std::size_t e = world.entities();
  numerics::Matrix force(e, 2);
  for (std::size_t a = 0; a < e; ++a) {
    if (!world.collidable[a]) continue;
    for (std::size_t b = 0; b < e; ++b) {
      if (b == a || !world.collidable[b]) continue;
      double fx, fy;
      contact_force(world, a, b, fx, fy);
      force(a, 0) += fx;
      force(a, 1) += fy;
    }
  }
  return force;
}

void integrate(World& world, const numerics::Matrix& forces, double dt) {
  if (dt <= 0.0) throw ConfigError("integrate: dt must be positive");
  if (forces.rows() != world.entities() || forces.cols() != 2)
    throw DimensionError("integrate: force matrix " + forces.shape_str() + " for " +
                         std::to_string(world.entities()) + " entities");
  const double keep = 1.0 - world.physics.damping;
  for (std::size_t i = 0; i < world.entities(); ++i) {
    if (!world.movable[i]) continue;
    const double fx = forces(i, 0), fy = forces(i, 1);
    if (!std::isfinite(fx) || !std::isfinite(fy))
      throw Fault("integrate: non-finite force on entity " + std::to_string(i));
    double vx = world.vel_x[i] * keep + fx / world.mass[i] * dt;
    double vy = world.vel_y[i] * keep + fy / world.mass[i] * dt;
    const double vmax = world.max_speed[i];
    if (std::isfinite(vmax)) {
      const double speed = std::sqrt(vx * vx + vy * vy);
      if (speed > vmax) {
        vx *= vmax / speed;
        vy *= vmax / speed;
      }
    }
    world.vel_x[i] = vx;
    world.vel_y[i] = vy;
    world.pos_x[i] += vx * dt;
    world.pos_y[i] += vy * dt;
  }
}

namespace {

void step_impl(World& world, const JointAction& actions, bool oracle_collisions) {
  numerics::Matrix act_force = action_to_force(actions, world);
  numerics::Matrix force =
      oracle_collisions ? reference_collision_oracle(world) : collision_forces(world);
  for (std::size_t i = 0; i < world.num_actors; ++i) {
    force(i, 0) += act_force(i, 0);
    force(i, 1) += act_force(i, 1);
  }
  integrate(world, force, world.physics.dt);
  ++world.step_count;
}

}  // namespace

void step(World& world, const JointAction& actions) { step_impl(world, actions, false); }

void step_with_oracle_collisions(World& world, const JointAction& actions) {
  step_impl(world, actions, true);
}

}  // namespace picrl::engine
