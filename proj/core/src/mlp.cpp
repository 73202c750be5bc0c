#include "picrl/mlp.hpp"

#include <cmath>

#include "picrl/error.hpp"

namespace picrl::numerics {

namespace {

void init_uniform(Matrix& m, double bound, Rng& rng) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform(-bound, bound);
}

}  // namespace

Mlp::Mlp(std::vector<std::size_t> dims, Activation hidden_activation, Rng& rng,
         const std::string& prefix)
    : dims_(std::move(dims)), hidden_activation_(hidden_activation) {
  if (dims_.size() < 2) throw ConfigError("mlp: needs at least input and output dims");
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    const std::string tag = prefix + std::to_string(l + 1);
    Param& w = params_.add(tag + "/w", dims_[l], dims_[l + 1]);
    Param& b = params_.add(tag + "/b", 1, dims_[l + 1]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims_[l]));
    init_uniform(w.value, bound, rng);
    init_uniform(b.value, bound, rng);
  }
}

Matrix Mlp::forward(const Matrix& x) {
  if (x.cols() != dims_.front())
    throw DimensionError("mlp: input " + x.shape_str() + " expects " +
                         std::to_string(dims_.front()) + " columns");
  const std::size_t layers = dims_.size() - 1;
  inputs_.assign(layers, Matrix());
  preacts_.assign(layers, Matrix());
  Matrix h = x;
  for (std::size_t l = 0; l < layers; ++l) {
    inputs_[l] = h;
    Matrix u = affine_forward(h, params_[2 * l].value, params_[2 * l + 1].value);
    if (l + 1 < layers) {
      preacts_[l] = u;
      h = activate(u, hidden_activation_);
    } else {
      h = std::move(u);
    }
  }
  cache_valid_ = true;
  return h;
}

Matrix Mlp::backward(const Matrix& dy) {
  if (!cache_valid_) throw Fault("mlp: backward without a cached forward pass");
  cache_valid_ = false;
  const std::size_t layers = dims_.size() - 1;
  Matrix dh = dy;
  for (std::size_t l = layers; l-- > 0;) {
    Matrix du = l + 1 < layers ? activate_backward(preacts_[l], dh, hidden_activation_)
                               : std::move(dh);
    dh = affine_backward(inputs_[l], params_[2 * l].value, du, params_[2 * l].grad,
                         params_[2 * l + 1].grad);
  }
  return dh;
}

}  // namespace picrl::numerics
