#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "picrl/gcn.hpp"
#include "picrl/mlp.hpp"

namespace picrl::critics {

enum class CriticKind { kMlp, kMlpAug, kPic };

CriticKind critic_kind_from_name(std::string_view name);  // "mlp" | "mlp_aug" | "pic"
std::string critic_kind_name(CriticKind kind);

struct CriticConfig {
  std::size_t num_agents = 0;
  std::size_t obs_dim = 0;
  std::size_t act_dim = 5;
  std::size_t hidden = 128;
  std::size_t gcn_layers = 2;
  PoolMode pool = PoolMode::kMax;
  GraphSpec graph{};
  // Node attributes for heterogeneous teams: group_dim > 0 appends the
  // trainable embedding of agent i's group to its input row.
  std::size_t group_dim = 0;
  std::vector<std::size_t> agent_group;  // size num_agents when group_dim > 0
};

// Centralized action-value net. forward() consumes the joint observation and
// joint action (one row per transition, agents flattened side by side) and
// caches what backward() needs; backward() accumulates parameter gradients
// and returns the gradient with respect to the joint action block.
class Critic {
 public:
  virtual ~Critic() = default;

  virtual numerics::Matrix forward(const numerics::Matrix& joint_obs,
                                   const numerics::Matrix& joint_act) = 0;  // B x 1
  virtual numerics::Matrix backward(const numerics::Matrix& upstream) = 0;  // B x (N*act_dim)

  virtual numerics::ParamSet& params() = 0;
  virtual const numerics::ParamSet& params() const = 0;
  virtual std::unique_ptr<Critic> clone() const = 0;

  std::size_t param_count() const { return params().scalar_count(); }
};

// Baseline: the joint input through a two-hidden-layer MLP (same architecture
// as the actor). Output depends on agent order.
class MlpCritic final : public Critic {
 public:
  MlpCritic(const CriticConfig& cfg, Rng& rng);

  numerics::Matrix forward(const numerics::Matrix& joint_obs,
                           const numerics::Matrix& joint_act) override;
  numerics::Matrix backward(const numerics::Matrix& upstream) override;
  numerics::ParamSet& params() override { return net_.params(); }
  const numerics::ParamSet& params() const override { return net_.params(); }
  std::unique_ptr<Critic> clone() const override { return std::make_unique<MlpCritic>(*this); }

 private:
  CriticConfig cfg_;
  numerics::Mlp net_;
};

// Permutation invariant critic: per-agent rows through shared-weight graph
// convolutions, a symmetric pooling layer, and an affine scalar head. The
// trainable parameter count does not depend on the number of agents.
class PicCritic final : public Critic {
 public:
  PicCritic(const CriticConfig& cfg, Rng& rng);

  numerics::Matrix forward(const numerics::Matrix& joint_obs,
                           const numerics::Matrix& joint_act) override;
  numerics::Matrix backward(const numerics::Matrix& upstream) override;
  numerics::ParamSet& params() override { return params_; }
  const numerics::ParamSet& params() const override { return params_; }
  std::unique_ptr<Critic> clone() const override { return std::make_unique<PicCritic>(*this); }

  // Single-sample evaluation with an explicit adjacency (tests, inspection).
  // Rows of z are per-agent [obs, action] vectors without group columns.
  double value(const numerics::Matrix& z_rows, const Adjacency& adj);

  const CriticConfig& config() const { return cfg_; }

 private:
  numerics::Matrix forward_rows(const numerics::Matrix& rows, std::size_t batch,
                                const std::vector<Adjacency>& adj);

  CriticConfig cfg_;
  numerics::ParamSet params_;
  std::size_t input_dim_ = 0;  // obs + act (+ group)

  // Cache of the last forward pass.
  struct Cache {
    std::size_t batch = 0;
    std::vector<Adjacency> adjacency;           // one entry when shared
    std::vector<numerics::Matrix> layer_in;     // h_{l-1}, (B*N) x D
    std::vector<numerics::Matrix> layer_mixed;  // A h_{l-1}
    std::vector<numerics::Matrix> layer_preact;
    numerics::Matrix pooled;                    // B x D_L
    std::vector<std::size_t> argmax;            // B * D_L (max pooling)
    bool valid = false;
  } cache_;
};

// Builds the critic for `kind`; mlp_aug shares the MLP architecture (the
// shuffling happens in the training loop).
std::unique_ptr<Critic> make_critic(CriticKind kind, const CriticConfig& cfg, Rng& rng);

}  // namespace picrl::critics
