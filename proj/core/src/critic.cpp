#include "picrl/critic.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::critics {

using numerics::Activation;
using numerics::Matrix;

CriticKind critic_kind_from_name(std::string_view name) {
  if (name == "mlp") return CriticKind::kMlp;
  if (name == "mlp_aug") return CriticKind::kMlpAug;
  if (name == "pic") return CriticKind::kPic;
  throw ConfigError("critic: '" + std::string(name) + "' is not 'mlp', 'mlp_aug' or 'pic'");
}

std::string critic_kind_name(CriticKind kind) {
  switch (kind) {
    case CriticKind::kMlp: return "mlp";
    case CriticKind::kMlpAug: return "mlp_aug";
    case CriticKind::kPic: return "pic";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// MlpCritic

namespace {

std::vector<std::size_t> mlp_dims(const CriticConfig& cfg) {
  return {cfg.num_agents * (cfg.obs_dim + cfg.act_dim), cfg.hidden, cfg.hidden, 1};
}

Matrix concat_cols(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw DimensionError("concat: row mismatch " + a.shape_str() + " vs " + b.shape_str());
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row_ptr(i), a.row_ptr(i) + a.cols(), out.row_ptr(i));
    std::copy(b.row_ptr(i), b.row_ptr(i) + b.cols(), out.row_ptr(i) + a.cols());
  }
  return out;
}

}  // namespace

MlpCritic::MlpCritic(const CriticConfig& cfg, Rng& rng)
    : cfg_(cfg), net_(mlp_dims(cfg), Activation::kRelu, rng) {}

Matrix MlpCritic::forward(const Matrix& joint_obs, const Matrix& joint_act) {
  const std::size_t no = cfg_.num_agents * cfg_.obs_dim;
  const std::size_t na = cfg_.num_agents * cfg_.act_dim;
  if (joint_obs.cols() != no || joint_act.cols() != na)
    throw DimensionError("mlp_critic: inputs " + joint_obs.shape_str() + ", " +
                         joint_act.shape_str() + " for obs_dim=" + std::to_string(cfg_.obs_dim) +
                         " act_dim=" + std::to_string(cfg_.act_dim) + " agents=" +
                         std::to_string(cfg_.num_agents));
  return net_.forward(concat_cols(joint_obs, joint_act));
}

Matrix MlpCritic::backward(const Matrix& upstream) {
  Matrix dx = net_.backward(upstream);
  const std::size_t no = cfg_.num_agents * cfg_.obs_dim;
  const std::size_t na = cfg_.num_agents * cfg_.act_dim;
  Matrix dact(dx.rows(), na);
  for (std::size_t i = 0; i < dx.rows(); ++i)
    std::copy(dx.row_ptr(i) + no, dx.row_ptr(i) + no + na, dact.row_ptr(i));
  return dact;
}

// ---------------------------------------------------------------------------
// PicCritic

PicCritic::PicCritic(const CriticConfig& cfg, Rng& rng) : cfg_(cfg) {
  if (cfg_.num_agents < 1) throw ConfigError("pic: needs at least one agent");
  if (cfg_.gcn_layers < 1) throw ConfigError("pic: needs at least one layer");
  if (cfg_.group_dim > 0 && cfg_.agent_group.size() != cfg_.num_agents)
    throw ConfigError("pic: agent_group must list every agent when group_dim > 0");
  if (cfg_.group_dim == 0 && !cfg_.agent_group.empty()) {
    const auto [lo, hi] = std::minmax_element(cfg_.agent_group.begin(), cfg_.agent_group.end());
    if (*lo != *hi)
      throw ConfigError("pic: heterogeneous groups require node attributes (group_dim > 0)");
  }
  input_dim_ = cfg_.obs_dim + cfg_.act_dim + cfg_.group_dim;

  std::size_t in = input_dim_;
  for (std::size_t l = 1; l <= cfg_.gcn_layers; ++l) {
    const std::string tag = "gcn" + std::to_string(l);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (const char* part : {"/w_self", "/w_other"}) {
      numerics::Param& w = params_.add(tag + part, in, cfg_.hidden);
      for (std::size_t i = 0; i < w.value.size(); ++i) w.value[i] = rng.uniform(-bound, bound);
    }
    numerics::Param& b = params_.add(tag + "/bias", 1, cfg_.hidden);
    for (std::size_t i = 0; i < b.value.size(); ++i) b.value[i] = rng.uniform(-bound, bound);
    in = cfg_.hidden;
  }
  {
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg_.hidden));
    numerics::Param& w = params_.add("head/w", cfg_.hidden, 1);
    for (std::size_t i = 0; i < w.value.size(); ++i) w.value[i] = rng.uniform(-bound, bound);
    numerics::Param& b = params_.add("head/b", 1, 1);
    b.value[0] = rng.uniform(-bound, bound);
  }
  if (cfg_.group_dim > 0) {
    const std::size_t n_groups =
        1 + *std::max_element(cfg_.agent_group.begin(), cfg_.agent_group.end());
    for (std::size_t g = 0; g < n_groups; ++g) {
      numerics::Param& e = params_.add("group" + std::to_string(g), 1, cfg_.group_dim);
      for (std::size_t i = 0; i < e.value.size(); ++i) e.value[i] = rng.normal();
    }
  }
}

namespace {

// Per-sample neighborhood sums over a (batch*n) x d block matrix.
Matrix block_mix(const Matrix& h, std::size_t batch, std::size_t n,
                 const std::vector<Adjacency>& adj, bool transposed) {
  const std::size_t d = h.cols();
  Matrix out(h.rows(), d);
  std::vector<double> total(d);
  for (std::size_t b = 0; b < batch; ++b) {
    const std::size_t base = b * n;
    const Adjacency& a = adj.size() == 1 ? adj[0] : adj[b];
    if (a.is_complete()) {
      std::fill(total.begin(), total.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double* r = h.row_ptr(base + i);
        for (std::size_t c = 0; c < d; ++c) total[c] += r[c];
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double* r = h.row_ptr(base + i);
        double* o = out.row_ptr(base + i);
        for (std::size_t c = 0; c < d; ++c) o[c] = total[c] - r[c];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const bool edge = transposed ? a.at(j, i) : a.at(i, j);
          if (!edge) continue;
          const double* r = h.row_ptr(base + j);
          double* o = out.row_ptr(base + i);
          for (std::size_t c = 0; c < d; ++c) o[c] += r[c];
        }
    }
  }
  return out;
}

}  // namespace

Matrix PicCritic::forward_rows(const Matrix& rows, std::size_t batch,
                               const std::vector<Adjacency>& adj) {
  const std::size_t n = rows.rows() / batch;
  const double inv_n = 1.0 / static_cast<double>(n);

  cache_ = Cache{};
  cache_.batch = batch;
  cache_.adjacency = adj;
  cache_.layer_in.reserve(cfg_.gcn_layers);
  cache_.layer_mixed.reserve(cfg_.gcn_layers);
  cache_.layer_preact.reserve(cfg_.gcn_layers);

  Matrix h = rows;
  for (std::size_t l = 0; l < cfg_.gcn_layers; ++l) {
    const Matrix& w_self = params_.at("gcn" + std::to_string(l + 1) + "/w_self").value;
    const Matrix& w_other = params_.at("gcn" + std::to_string(l + 1) + "/w_other").value;
    const Matrix& bias = params_.at("gcn" + std::to_string(l + 1) + "/bias").value;
    Matrix mixed = block_mix(h, batch, n, adj, false);
    Matrix preact = numerics::matmul(mixed, w_other);
    numerics::scale_inplace(preact, inv_n);
    numerics::add_inplace(preact, numerics::matmul(h, w_self));
    numerics::add_row_broadcast(preact, bias);
    cache_.layer_in.push_back(std::move(h));
    cache_.layer_mixed.push_back(std::move(mixed));
    h = numerics::activate(preact, Activation::kRelu);
    cache_.layer_preact.push_back(std::move(preact));
  }

  const std::size_t d = h.cols();
  Matrix pooled(batch, d);
  if (cfg_.pool == PoolMode::kMax) {
    cache_.argmax.assign(batch * d, 0);
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        std::size_t best_row = 0;
        double best = h(b * n, c);
        for (std::size_t i = 1; i < n; ++i)
          if (h(b * n + i, c) > best) {
            best = h(b * n + i, c);
            best_row = i;
          }
        pooled(b, c) = best;
        cache_.argmax[b * d + c] = best_row;
      }
  } else {
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += h(b * n + i, c);
        pooled(b, c) = sum * inv_n;
      }
  }
  cache_.pooled = pooled;

  Matrix q = numerics::matmul(pooled, params_.at("head/w").value);
  numerics::add_row_broadcast(q, params_.at("head/b").value);
  cache_.valid = true;
  return q;
}

Matrix PicCritic::forward(const Matrix& joint_obs, const Matrix& joint_act) {
  const std::size_t n = cfg_.num_agents;
  const std::size_t batch = joint_obs.rows();
  if (joint_obs.cols() != n * cfg_.obs_dim || joint_act.cols() != n * cfg_.act_dim ||
      joint_act.rows() != batch)
    throw DimensionError("pic: inputs " + joint_obs.shape_str() + ", " + joint_act.shape_str() +
                         " for obs_dim=" + std::to_string(cfg_.obs_dim) +
                         " act_dim=" + std::to_string(cfg_.act_dim) +
                         " agents=" + std::to_string(n));

  Matrix rows(batch * n, input_dim_);
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      double* dst = rows.row_ptr(b * n + i);
      const double* obs = joint_obs.row_ptr(b) + i * cfg_.obs_dim;
      const double* act = joint_act.row_ptr(b) + i * cfg_.act_dim;
      std::copy(obs, obs + cfg_.obs_dim, dst);
      std::copy(act, act + cfg_.act_dim, dst + cfg_.obs_dim);
      if (cfg_.group_dim > 0) {
        const Matrix& g = params_.at("group" + std::to_string(cfg_.agent_group[i])).value;
        std::copy(g.data(), g.data() + cfg_.group_dim, dst + cfg_.obs_dim + cfg_.act_dim);
      }
    }

  std::vector<Adjacency> adj;
  if (cfg_.graph.mode == GraphMode::kFull) {
    adj.push_back(Adjacency::complete(n));
  } else {
    // Per-sample graphs from the agents' own positions (leading observation
    // entries).
    adj.reserve(batch);
    Matrix pos(n, 2);
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        pos(i, 0) = joint_obs(b, i * cfg_.obs_dim);
        pos(i, 1) = joint_obs(b, i * cfg_.obs_dim + 1);
      }
      adj.push_back(Adjacency::nearest_neighbors(pos, cfg_.graph.k));
    }
  }
  return forward_rows(rows, batch, adj);
}

double PicCritic::value(const Matrix& z_rows, const Adjacency& adj) {
  if (cfg_.group_dim > 0) throw ConfigError("pic: value() expects a critic without attributes");
  if (z_rows.cols() != input_dim_)
    throw DimensionError("pic: z rows " + z_rows.shape_str() + " expect " +
                         std::to_string(input_dim_) + " columns");
  if (adj.size() != z_rows.rows())
    throw DimensionError("pic: adjacency size " + std::to_string(adj.size()) + " vs z " +
                         z_rows.shape_str());
  return forward_rows(z_rows, 1, {adj})(0, 0);
}

Matrix PicCritic::backward(const Matrix& upstream) {
  if (!cache_.valid) throw Fault("pic: backward without a cached forward pass");
  cache_.valid = false;
  const std::size_t batch = cache_.batch;
  const std::size_t n = cache_.layer_in.front().rows() / batch;
  const double inv_n = 1.0 / static_cast<double>(n);
  if (upstream.rows() != batch || upstream.cols() != 1)
    throw DimensionError("pic: upstream " + upstream.shape_str() + " expects " +
                         std::to_string(batch) + "x1");

  numerics::Param& head_w = params_.at("head/w");
  numerics::Param& head_b = params_.at("head/b");
  numerics::add_inplace(head_w.grad, numerics::matmul_tn(cache_.pooled, upstream));
  numerics::add_inplace(head_b.grad, numerics::col_sums(upstream));
  Matrix dpooled = numerics::matmul_nt(upstream, head_w.value);  // B x D_L

  const std::size_t d = dpooled.cols();
  Matrix dh(batch * n, d);
  if (cfg_.pool == PoolMode::kMax) {
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t c = 0; c < d; ++c)
        dh(b * n + cache_.argmax[b * d + c], c) += dpooled(b, c);
  } else {
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        const double v = dpooled(b, c) * inv_n;
        for (std::size_t i = 0; i < n; ++i) dh(b * n + i, c) += v;
      }
  }

  for (std::size_t l = cfg_.gcn_layers; l-- > 0;) {
    const std::string tag = "gcn" + std::to_string(l + 1);
    numerics::Param& w_self = params_.at(tag + "/w_self");
    numerics::Param& w_other = params_.at(tag + "/w_other");
    numerics::Param& bias = params_.at(tag + "/bias");

    Matrix du = numerics::activate_backward(cache_.layer_preact[l], dh, Activation::kRelu);
    numerics::add_inplace(bias.grad, numerics::col_sums(du));
    numerics::add_inplace(w_self.grad, numerics::matmul_tn(cache_.layer_in[l], du));
    {
      Matrix dwo = numerics::matmul_tn(cache_.layer_mixed[l], du);
      numerics::axpy_inplace(w_other.grad, inv_n, dwo);
    }
    dh = numerics::matmul_nt(du, w_self.value);
    Matrix mixed_back = block_mix(du, batch, n, cache_.adjacency, true);
    Matrix dvia_other = numerics::matmul_nt(mixed_back, w_other.value);
    numerics::axpy_inplace(dh, inv_n, dvia_other);
  }

  // dh now holds the gradient w.r.t. the input rows; slice out the action
  // block and fold the attribute columns into the group embeddings.
  Matrix dact(batch, n * cfg_.act_dim);
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      const double* src = dh.row_ptr(b * n + i) + cfg_.obs_dim;
      std::copy(src, src + cfg_.act_dim, dact.row_ptr(b) + i * cfg_.act_dim);
    }
  if (cfg_.group_dim > 0) {
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t i = 0; i < n; ++i) {
        numerics::Param& g = params_.at("group" + std::to_string(cfg_.agent_group[i]));
        const double* src = dh.row_ptr(b * n + i) + cfg_.obs_dim + cfg_.act_dim;
        for (std::size_t c = 0; c < cfg_.group_dim; ++c) g.grad[c] += src[c];
      }
  }
  return dact;
}

std::unique_ptr<Critic> make_critic(CriticKind kind, const CriticConfig& cfg, Rng& rng) {
  if (kind == CriticKind::kPic) return std::make_unique<PicCritic>(cfg, rng);
  return std::make_unique<MlpCritic>(cfg, rng);
}

}  // namespace picrl::critics
