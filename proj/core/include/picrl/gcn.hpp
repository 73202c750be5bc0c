#pragma once

#include <string_view>

#include "picrl/adjacency.hpp"
#include "picrl/layers.hpp"

namespace picrl::critics {

// Neighborhood sum per node: (A h) for transposed == false, (A^T h) otherwise.
numerics::Matrix neighbor_mix(const numerics::Matrix& h, const Adjacency& adj, bool transposed);

struct GcnLayerOut {
  numerics::Matrix output;  // sigma(preact)
  numerics::Matrix preact;  // (1/n) A h W_other + h W_self + bias
};

// One graph-convolution layer; shared weights across rows make it
// permutation-equivariant under the complete graph.
GcnLayerOut gcn_layer(const numerics::Matrix& h, const Adjacency& adj,
                      const numerics::Matrix& w_self, const numerics::Matrix& w_other,
                      const numerics::Matrix& bias, numerics::Activation activation);

enum class PoolMode { kMax, kAvg };

PoolMode pool_mode_from_name(std::string_view name);  // "max" | "avg"
std::string pool_mode_name(PoolMode mode);

// Columnwise reduction over rows; 1 x K.
numerics::Matrix pool(const numerics::Matrix& h, PoolMode mode);

}  // namespace picrl::critics
