#include "picrl/maddpg.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::learner {

using numerics::Matrix;

AgentNets::AgentNets(std::size_t obs_dim, std::size_t act_dim, std::size_t hidden,
                     critics::CriticKind kind, const critics::CriticConfig& critic_cfg, Rng& rng)
    : actor(obs_dim, act_dim, hidden, rng),
      actor_target(actor),
      critic(critics::make_critic(kind, critic_cfg, rng)),
      critic_target(critic->clone()),
      actor_opt(actor.params()),
      critic_opt(critic->params()) {}

void soft_update(numerics::ParamSet& target, const numerics::ParamSet& online, double tau) {
  if (tau < 0.0 || tau > 1.0) throw ConfigError("soft_update: tau outside [0,1]");
  if (target.count() != online.count()) throw Fault("soft_update: parameter sets differ");
  for (std::size_t k = 0; k < target.count(); ++k) {
    numerics::Param& t = target[k];
    const numerics::Param& o = online[k];
    if (t.name != o.name || !t.value.same_shape(o.value))
      throw Fault("soft_update: mismatched parameter '" + t.name + "'");
    for (std::size_t i = 0; i < t.value.size(); ++i)
      t.value[i] = tau * o.value[i] + (1.0 - tau) * t.value[i];
  }
}

namespace {

Matrix slice_agent(const Matrix& joint, std::size_t agent, std::size_t width) {
  Matrix out(joint.rows(), width);
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    const double* src = joint.row_ptr(r) + agent * width;
    std::copy(src, src + width, out.row_ptr(r));
  }
  return out;
}

}  // namespace

double critic_update(std::size_t agent, const Batch& batch, std::vector<AgentNets>& nets,
                     const JointDims& dims, double gamma, double lr) {
  const std::size_t b = batch.size();

  // a'_j from every agent's target actor on its next observation.
  Matrix next_act(b, dims.agents * dims.act_dim);
  for (std::size_t j = 0; j < dims.agents; ++j) {
    Matrix obs_j = slice_agent(batch.next_obs, j, dims.obs_dim);
    Matrix a_j = nets[j].actor_target.forward(obs_j);
    for (std::size_t r = 0; r < b; ++r)
      std::copy(a_j.row_ptr(r), a_j.row_ptr(r) + dims.act_dim,
                next_act.row_ptr(r) + j * dims.act_dim);
  }

  AgentNets& self = nets[agent];
  Matrix q_next = self.critic_target->forward(batch.next_obs, next_act);
  Matrix q = self.critic->forward(batch.obs, batch.act);

  double loss = 0.0;
  Matrix dq(b, 1);
  const double inv_b = 1.0 / static_cast<double>(b);
  for (std::size_t r = 0; r < b; ++r) {
    const double r_i = batch.reward(r, agent);
    const double mask = batch.terminal[r] ? 0.0 : 1.0;
    const double y = r_i + gamma * mask * q_next(r, 0);
    const double diff = q(r, 0) - y;
    loss += diff * diff * inv_b;
    dq(r, 0) = 2.0 * diff * inv_b;
  }
  if (!std::isfinite(loss))
    throw Fault("critic_update: non-finite loss for agent " + std::to_string(agent));

  self.critic->params().zero_grads();
  self.critic->backward(dq);
  self.critic_opt.step(self.critic->params(), lr);
  return loss;
}

double actor_update(std::size_t agent, const Batch& batch, std::vector<AgentNets>& nets,
                    const JointDims& dims, double lr) {
  const std::size_t b = batch.size();
  AgentNets& self = nets[agent];

  Matrix obs_i = slice_agent(batch.obs, agent, dims.obs_dim);
  Matrix a_i = self.actor.forward(obs_i);

  Matrix act = batch.act;
  for (std::size_t r = 0; r < b; ++r)
    std::copy(a_i.row_ptr(r), a_i.row_ptr(r) + dims.act_dim,
              act.row_ptr(r) + agent * dims.act_dim);

  Matrix q = self.critic->forward(batch.obs, act);
  double objective = 0.0;
  const double inv_b = 1.0 / static_cast<double>(b);
  for (std::size_t r = 0; r < b; ++r) objective += q(r, 0) * inv_b;
  if (!std::isfinite(objective))
    throw Fault("actor_update: non-finite objective for agent " + std::to_string(agent));

  // Minimize -J: the critic consumes -1/B upstream; its own gradient slots
  // are scratch here and are re-zeroed by the next critic update.
  Matrix upstream(b, 1, -inv_b);
  self.critic->params().zero_grads();
  Matrix dact = self.critic->backward(upstream);

  Matrix dact_i(b, dims.act_dim);
  for (std::size_t r = 0; r < b; ++r) {
    const double* src = dact.row_ptr(r) + agent * dims.act_dim;
    std::copy(src, src + dims.act_dim, dact_i.row_ptr(r));
  }
  self.actor.params().zero_grads();
  self.actor.backward(dact_i);
  self.actor_opt.step(self.actor.params(), lr);
  return objective;
}

void shuffle_augment(Batch& batch, const JointDims& dims, Rng& rng) {
  const std::size_t n = dims.agents;
  std::vector<std::size_t> perm(n);
  std::vector<double> scratch;
  auto permute_blocks = [&](Matrix& m, std::size_t row, std::size_t width) {
    double* base = m.row_ptr(row);
    scratch.assign(base, base + n * width);
    for (std::size_t slot = 0; slot < n; ++slot)
      std::copy(scratch.begin() + perm[slot] * width, scratch.begin() + (perm[slot] + 1) * width,
                base + slot * width);
  };
  for (std::size_t r = 0; r < batch.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.integer(i))]);
    permute_blocks(batch.obs, r, dims.obs_dim);
    permute_blocks(batch.act, r, dims.act_dim);
    permute_blocks(batch.reward, r, 1);
    permute_blocks(batch.next_obs, r, dims.obs_dim);
  }
}

}  // namespace picrl::learner
