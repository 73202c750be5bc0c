#include "picrl/world.hpp"

#include <cmath>

#include "picrl/error.hpp"

namespace picrl::engine {

std::size_t World::add_entity(double x, double y, double r, double m, bool is_movable,
                              bool is_collidable, double sens, double vmax) {
  pos_x.push_back(x);
  pos_y.push_back(y);
  vel_x.push_back(0.0);
  vel_y.push_back(0.0);
  radius.push_back(r);
  mass.push_back(m);
  max_speed.push_back(vmax);
  sensitivity.push_back(sens);
  movable.push_back(is_movable ? 1 : 0);
  collidable.push_back(is_collidable ? 1 : 0);
  return pos_x.size() - 1;
}

void World::validate() const {
  if (num_actors < 1) throw Fault("world: needs at least one actor");
  if (num_actors > entities()) throw Fault("world: actor count exceeds entity count");
  for (std::size_t i = 0; i < entities(); ++i) {
    if (!std::isfinite(pos_x[i]) || !std::isfinite(pos_y[i]) || !std::isfinite(vel_x[i]) ||
        !std::isfinite(vel_y[i]))
      throw Fault("world: non-finite state for entity " + std::to_string(i));
    if (mass[i] <= 0.0) throw Fault("world: non-positive mass for entity " + std::to_string(i));
  }
}

void JointAction::set_row(std::size_t actor, const double* five) {
  for (std::size_t c = 0; c < kChannels; ++c) values_(actor, c) = five[c];
}

}  // namespace picrl::engine
