#include "picrl/actor.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::learner {

using numerics::Matrix;

Actor::Actor(std::size_t obs_dim, std::size_t act_dim, std::size_t hidden, Rng& rng)
    : net_({obs_dim, hidden, hidden, act_dim}, numerics::Activation::kRelu, rng) {}

Matrix Actor::forward(const Matrix& obs) {
  squash_in_ = net_.forward(obs);
  Matrix out(squash_in_.rows(), squash_in_.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 0.5 * (std::tanh(squash_in_[i]) + 1.0);
  cache_valid_ = true;
  return out;
}

void Actor::backward(const Matrix& d_action) {
  if (!cache_valid_) throw Fault("actor: backward without a cached forward pass");
  cache_valid_ = false;
  Matrix du(squash_in_.rows(), squash_in_.cols());
  for (std::size_t i = 0; i < du.size(); ++i) {
    const double t = std::tanh(squash_in_[i]);
    du[i] = d_action[i] * 0.5 * (1.0 - t * t);
  }
  net_.backward(du);
}

std::vector<double> Actor::act(std::span<const double> obs) {
  Matrix x(1, obs.size());
  std::copy(obs.begin(), obs.end(), x.data());
  Matrix y = forward(x);
  cache_valid_ = false;  // single-step action, nothing to train against
  return std::vector<double>(y.data(), y.data() + y.size());
}

std::vector<double> select_action(Actor& actor, std::span<const double> obs, double noise_scale,
                                  Rng& rng) {
  if (noise_scale < 0.0) throw ConfigError("select_action: negative noise scale");
  std::vector<double> a = actor.act(obs);
  if (noise_scale > 0.0)
    for (double& v : a) v += noise_scale * rng.normal();
  for (double& v : a) v = std::clamp(v, 0.0, 1.0);
  return a;
}

}  // namespace picrl::learner
