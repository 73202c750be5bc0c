#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "picrl/error.hpp"
#include "picrl/physics.hpp"
#include "picrl/rng.hpp"

using namespace picrl;
using namespace picrl::engine;

namespace {

World two_agents(double x0, double x1, double r = 0.1) {
  World w;
  w.num_actors = 2;
  w.add_entity(x0, 0.0, r, 1.0, true, true);
  w.add_entity(x1, 0.0, r, 1.0, true, true);
  return w;
}

// Random collidable-heavy world; a few non-collidable landmark rows mixed in.
World random_world(std::size_t n, Rng& rng, double spread) {
  World w;
  w.num_actors = n;
  for (std::size_t i = 0; i < n; ++i)
    w.add_entity(rng.uniform(-spread, spread), rng.uniform(-spread, spread),
                 rng.uniform(0.03, 0.2), rng.uniform(0.5, 2.0), true, true);
  const std::size_t landmarks = rng.integer(3);
  for (std::size_t i = 0; i < landmarks; ++i)
    w.add_entity(rng.uniform(-spread, spread), rng.uniform(-spread, spread), 0.05, 1.0, false,
                 false);
  return w;
}

JointAction one_hot(std::size_t actors, std::size_t actor, std::size_t channel, double v = 1.0) {
  JointAction a(actors);
  a(actor, channel) = v;
  return a;
}

}  // namespace

TEST_CASE("action channels map to forces") {
  World w = two_agents(-5, 5);
  SUBCASE("no-op row gives zero force") {
    const auto f = action_to_force(JointAction(2), w);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(0, 1) == 0.0);
  }
  SUBCASE("left channel pushes -x") {
    const auto f = action_to_force(one_hot(2, 0, JointAction::kLeft), w);
    CHECK(f(0, 0) == -1.0);
    CHECK(f(0, 1) == 0.0);
  }
  SUBCASE("opposing channels cancel") {
    JointAction a(2);
    a(0, JointAction::kLeft) = 0.5;
    a(0, JointAction::kRight) = 0.5;
    const auto f = action_to_force(a, w);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(0, 1) == 0.0);
  }
  SUBCASE("sensitivity scales the force") {
    w.sensitivity[0] = 3.0;
    const auto f = action_to_force(one_hot(2, 0, JointAction::kForward), w);
    CHECK(f(0, 1) == 3.0);
  }
  SUBCASE("out-of-range entries are clamped and flagged once") {
    JointAction a(2);
    a(0, JointAction::kRight) = 1.7;
    CHECK_FALSE(w.clamp_warned);
    const auto f = action_to_force(a, w);
    CHECK(f(0, 0) == 1.0);
    CHECK(w.clamp_warned);
  }
}

TEST_CASE("contact force vanishes beyond the soft margin tail") {
  // Separation well past radius sum: tail below 1e-6.
  World w = two_agents(0.0, 0.5, 0.1);
  const auto f = collision_forces(w);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f[i]) < 1e-6);
}

TEST_CASE("overlapping agents repel along the center line") {
  World w = two_agents(0.0, 0.15, 0.1);  // overlap of 0.05
  const auto f = collision_forces(w);
  CHECK(f(0, 0) < 0.0);   // pushed -x
  CHECK(f(1, 0) > 0.0);   // pushed +x
  CHECK(f(0, 1) == 0.0);
  CHECK(f(1, 1) == 0.0);
  CHECK(f(0, 0) == -f(1, 0));  // exact pair cancellation
}

TEST_CASE("coincident centers use the distance floor") {
  World w = two_agents(0.25, 0.25, 0.1);
  const auto fast = collision_forces(w);
  const auto slow = reference_collision_oracle(w);
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(std::isfinite(fast[i]));
    CHECK(fast[i] == slow[i]);
  }
}

TEST_CASE("vectorized collisions equal the per-pair oracle") {
  Rng rng(99);
  for (const std::size_t n : {2u, 3u, 10u, 50u, 200u}) {
    const int worlds = n >= 200 ? 20 : 100;
    for (int rep = 0; rep < worlds; ++rep) {
      // Alternate crowded and sparse layouts.
      const double spread = rep % 2 == 0 ? 0.5 : 1.5;
      World w = random_world(n, rng, spread);
      const auto fast = collision_forces(w);
      const auto slow = reference_collision_oracle(w);
      REQUIRE(numerics::max_abs_diff(fast, slow) <= 1e-10);
    }
  }
}

TEST_CASE("interaction forces obey Newton's third law") {
  Rng rng(123);
  for (int rep = 0; rep < 50; ++rep) {
    World w = random_world(12, rng, 0.4);
    const auto f = collision_forces(w);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < w.entities(); ++i) {
      sx += f(i, 0);
      sy += f(i, 1);
    }
    CHECK(std::abs(sx) <= 1e-10);
    CHECK(std::abs(sy) <= 1e-10);
  }
}

TEST_CASE("integrate applies damping and moves the particle") {
  World w = two_agents(0.0, 5.0);
  w.vel_x[0] = 1.0;
  integrate(w, numerics::Matrix(2, 2), 0.1);
  CHECK(w.vel_x[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(w.vel_y[0] == 0.0);
  CHECK(w.pos_x[0] == doctest::Approx(0.075).epsilon(1e-15));
}

TEST_CASE("immovable entities ignore forces") {
  World w;
  w.num_actors = 1;
  w.add_entity(0, 0, 0.1, 1.0, true, true);
  w.add_entity(1, 1, 0.1, 1.0, false, false);
  numerics::Matrix f(2, 2);
  f(1, 0) = 100.0;
  integrate(w, f, 0.1);
  CHECK(w.pos_x[1] == 1.0);
  CHECK(w.vel_x[1] == 0.0);
}

TEST_CASE("speed clamp holds exactly at the limit") {
  World w;
  w.num_actors = 1;
  w.add_entity(0, 0, 0.1, 1.0, true, true, 1.0, 1.0);  // max speed 1
  numerics::Matrix f(1, 2);
  f(0, 0) = 30.0;
  f(0, 1) = 40.0;
  integrate(w, f, 0.1);
  const double speed = std::hypot(w.vel_x[0], w.vel_y[0]);
  CHECK(std::abs(speed - 1.0) <= 1e-12);
}

TEST_CASE("non-finite force names the entity") {
  World w = two_agents(0, 1);
  numerics::Matrix f(2, 2);
  f(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    integrate(w, f, 0.1);
    FAIL("expected Fault");
  } catch (const Fault& e) {
    CHECK(std::string(e.what()).find("entity 1") != std::string::npos);
  }
}

TEST_CASE("integrate rejects non-positive dt") {
  World w = two_agents(0, 1);
  CHECK_THROWS_AS(integrate(w, numerics::Matrix(2, 2), 0.0), ConfigError);
}

TEST_CASE("step: resting world with no actions is a fixed point") {
  World w = two_agents(-1.0, 1.0);
  const World before = w;
  step(w, JointAction(2));
  CHECK(w.step_count == 1);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(w.pos_x[i] == before.pos_x[i]);
    CHECK(w.pos_y[i] == before.pos_y[i]);
    CHECK(w.vel_x[i] == 0.0);
    CHECK(w.vel_y[i] == 0.0);
  }
}

TEST_CASE("step: constant forward action raises y monotonically") {
  World w;
  w.num_actors = 1;
  w.add_entity(0, 0, 0.1, 1.0, true, true);
  double last = 0.0;
  for (int t = 0; t < 10; ++t) {
    step(w, one_hot(1, 0, JointAction::kForward));
    CHECK(w.pos_y[0] > last);
    last = w.pos_y[0];
  }
}

TEST_CASE("step is deterministic") {
  Rng rng(5);
  World a = random_world(8, rng, 0.3);
  World b = a;
  JointAction act(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t c = 1; c < JointAction::kChannels; ++c) act(i, c) = rng.uniform();
  for (int t = 0; t < 5; ++t) {
    step(a, act);
    step(b, act);
  }
  for (std::size_t i = 0; i < a.entities(); ++i) {
    CHECK(a.pos_x[i] == b.pos_x[i]);
    CHECK(a.pos_y[i] == b.pos_y[i]);
    CHECK(a.vel_x[i] == b.vel_x[i]);
    CHECK(a.vel_y[i] == b.vel_y[i]);
  }
}

TEST_CASE("stepping commutes with permuting the agent order") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6;
    World w = random_world(n, rng, 0.3);
    w.pos_x.resize(n); w.pos_y.resize(n); w.vel_x.resize(n); w.vel_y.resize(n);
    w.radius.resize(n); w.mass.resize(n); w.max_speed.resize(n); w.sensitivity.resize(n);
    w.movable.resize(n); w.collidable.resize(n);  // agents only, keeps the permutation total

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.integer(i)]);

    JointAction act(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 1; c < JointAction::kChannels; ++c) act(i, c) = rng.uniform();

    World pw;
    pw.num_actors = n;
    JointAction pact(n);
    for (std::size_t slot = 0; slot < n; ++slot) {
      const std::size_t src = perm[slot];
      pw.add_entity(w.pos_x[src], w.pos_y[src], w.radius[src], w.mass[src], true, true,
                    w.sensitivity[src], w.max_speed[src]);
      pw.vel_x[slot] = w.vel_x[src];
      pw.vel_y[slot] = w.vel_y[src];
      for (std::size_t c = 0; c < JointAction::kChannels; ++c) pact(slot, c) = act(src, c);
    }

    step(w, act);
    step(pw, pact);
    for (std::size_t slot = 0; slot < n; ++slot) {
      const std::size_t src = perm[slot];
      CHECK(pw.pos_x[slot] == doctest::Approx(w.pos_x[src]).epsilon(1e-9));
      CHECK(pw.pos_y[slot] == doctest::Approx(w.pos_y[src]).epsilon(1e-9));
      CHECK(pw.vel_x[slot] == doctest::Approx(w.vel_x[src]).epsilon(1e-9));
      CHECK(pw.vel_y[slot] == doctest::Approx(w.vel_y[src]).epsilon(1e-9));
    }
  }
}

TEST_CASE("speed stays clamped through full steps") {
  Rng rng(31);
  World w;
  w.num_actors = 4;
  for (int i = 0; i < 4; ++i)
    w.add_entity(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), 0.1, 1.0, true, true, 5.0, 0.8);
  JointAction act(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t c = 1; c < JointAction::kChannels; ++c) act(i, c) = rng.uniform();
  for (int t = 0; t < 20; ++t) {
    step(w, act);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::hypot(w.vel_x[i], w.vel_y[i]) <= 0.8 + 1e-12);
  }
}
