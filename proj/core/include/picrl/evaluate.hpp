#pragma once

#include <vector>

#include "picrl/actor.hpp"
#include "picrl/scenario.hpp"

namespace picrl::evalstat {

// Per-checkpoint sequences of evaluation episode returns, in training order.
struct EvalLog {
  std::vector<std::vector<double>> checkpoint_returns;
};

// Noise-free rollouts of one policy set; returns the sum of the shared
// reward per episode. Episode e draws its world and scripted actors from a
// substream of `seed`, so results are reproducible and order-independent.
std::vector<double> evaluate(std::vector<learner::Actor*> actors, const scenarios::TaskSpec& spec,
                             std::size_t episodes, std::uint64_t seed);

// Baseline: every action channel uniform in [0,1].
std::vector<double> evaluate_random_policy(const scenarios::TaskSpec& spec, std::size_t episodes,
                                           std::uint64_t seed);

// Mean return over the last (up to) ten checkpoints' episodes, pooled.
double final_metric(const EvalLog& log);

// Best checkpoint's mean return.
double absolute_metric(const EvalLog& log);

}  // namespace picrl::evalstat
