#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "picrl/matrix.hpp"

namespace picrl::engine {

// Physics constants of the particle world (classic MPE values).
struct WorldConfig {
  double dt = 0.1;
  double damping = 0.25;
  double contact_force = 100.0;
  double contact_margin = 1e-3;
  double distance_floor = 1e-9;  // coincident-center guard
};

inline constexpr double kNoSpeedLimit = std::numeric_limits<double>::infinity();

// Flat 2-D particle world. Entities are stored as parallel arrays; the first
// `num_actors` entities accept action rows (learning agents first, then any
// scripted actors), followed by movable non-actors (e.g. the push ball) and
// immovable landmarks.
struct World {
  WorldConfig physics;
  std::size_t num_actors = 0;

  std::vector<double> pos_x, pos_y;
  std::vector<double> vel_x, vel_y;
  std::vector<double> radius, mass, max_speed, sensitivity;
  std::vector<char> movable, collidable;
  std::uint64_t step_count = 0;

  // Set once an out-of-range action entry has been reported this episode.
  bool clamp_warned = false;

  std::size_t entities() const { return pos_x.size(); }

  std::size_t add_entity(double x, double y, double r, double m, bool is_movable,
                         bool is_collidable, double sens = 1.0, double vmax = kNoSpeedLimit);

  // Checks structural invariants: at least one actor, finite coordinates.
  void validate() const;
};

// num_actors x 5 action matrix; channels are [no-op, left, right, forward,
// backward] force magnitudes in [0, 1].
class JointAction {
 public:
  static constexpr std::size_t kChannels = 5;
  enum Channel : std::size_t { kNoop = 0, kLeft = 1, kRight = 2, kForward = 3, kBackward = 4 };

  JointAction() = default;
  explicit JointAction(std::size_t num_actors) : values_(num_actors, kChannels) {}

  std::size_t actors() const { return values_.rows(); }
  double& operator()(std::size_t actor, std::size_t channel) { return values_(actor, channel); }
  double operator()(std::size_t actor, std::size_t channel) const {
    return values_(actor, channel);
  }

  numerics::Matrix& matrix() { return values_; }
  const numerics::Matrix& matrix() const { return values_; }

  void set_row(std::size_t actor, const double* five);

 private:
  numerics::Matrix values_;
};

}  // namespace picrl::engine
