#pragma once

#include <string>
#include <vector>

#include "picrl/layers.hpp"
#include "picrl/param_set.hpp"
#include "picrl/rng.hpp"

namespace picrl::numerics {

// Fully connected net with a fixed activation on hidden layers and a linear
// output. Owns its parameters; forward caches what backward needs.
class Mlp {
 public:
  // dims = {input, hidden..., output}; weights start uniform +-1/sqrt(fan_in).
  Mlp(std::vector<std::size_t> dims, Activation hidden_activation, Rng& rng,
      const std::string& prefix = "fc");

  Matrix forward(const Matrix& x);
  // Accumulates parameter gradients, returns dL/dx. Requires a prior forward;
  // consumes the cache.
  Matrix backward(const Matrix& dy);

  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

 private:
  std::vector<std::size_t> dims_;
  Activation hidden_activation_;
  ParamSet params_;
  std::vector<Matrix> inputs_;   // per-layer input h_{l-1}
  std::vector<Matrix> preacts_;  // per hidden layer
  bool cache_valid_ = false;
};

}  // namespace picrl::numerics
