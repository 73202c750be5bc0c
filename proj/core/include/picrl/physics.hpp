#pragma once

#include "picrl/world.hpp"

namespace picrl::engine {

// Decodes action channels into per-actor forces:
//   force_x = sensitivity * (right - left)
//   force_y = sensitivity * (forward - backward)
// Entries outside [0, 1] are clamped; the first offence per episode is
// logged to stderr. Returns num_actors x 2.
numerics::Matrix action_to_force(const JointAction& actions, World& world);

// Softened repulsive contact forces between collidable entity pairs,
// equal magnitude and opposite sign per pair. The pairwise-distance pass is
// bulk arithmetic over flat arrays; the exp/log contact profile is evaluated
// only for pairs near contact (the far tail is below 1e-12 and dropped).
// Returns entities x 2.
numerics::Matrix collision_forces(const World& world);

// Same contract as collision_forces, implemented as the plainest possible
// nested per-pair loop. Ground truth for equivalence tests and the
// benchmark baseline; not used in the hot path.
numerics::Matrix reference_collision_oracle(const World& world);

// v' = v (1 - damping) + F/m dt, rescaled if ||v'|| exceeds the entity's
// speed limit; p' = p + v' dt. Immovable entities are untouched.
// Throws Fault naming the entity on a non-finite force.
void integrate(World& world, const numerics::Matrix& forces, double dt);

// action_to_force + collision_forces + integrate; bumps the step counter.
void step(World& world, const JointAction& actions);

// As step, but with the reference collision loop (benchmark baseline).
void step_with_oracle_collisions(World& world, const JointAction& actions);

}  // namespace picrl::engine
