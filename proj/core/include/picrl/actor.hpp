#pragma once

#include <span>
#include <vector>

#include "picrl/mlp.hpp"

namespace picrl::learner {

// Deterministic policy: two-hidden-layer MLP with ReLU, output squashed to
// [0,1] per action channel via 0.5 * (tanh(u) + 1).
class Actor {
 public:
  Actor(std::size_t obs_dim, std::size_t act_dim, std::size_t hidden, Rng& rng);

  numerics::Matrix forward(const numerics::Matrix& obs);  // B x act_dim in [0,1]
  void backward(const numerics::Matrix& d_action);        // accumulates gradients

  std::vector<double> act(std::span<const double> obs);

  numerics::ParamSet& params() { return net_.params(); }
  const numerics::ParamSet& params() const { return net_.params(); }
  std::size_t obs_dim() const { return net_.dims().front(); }
  std::size_t act_dim() const { return net_.dims().back(); }

 private:
  numerics::Mlp net_;
  numerics::Matrix squash_in_;  // pre-squash cache
  bool cache_valid_ = false;
};

// Policy output plus Gaussian exploration noise, clamped to [0,1] per
// channel. noise_scale 0 gives the pure policy action.
std::vector<double> select_action(Actor& actor, std::span<const double> obs, double noise_scale,
                                  Rng& rng);

}  // namespace picrl::learner
