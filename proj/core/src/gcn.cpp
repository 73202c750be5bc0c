#include "picrl/gcn.hpp"

#include <algorithm>

#include "picrl/error.hpp"

namespace picrl::critics {

numerics::Matrix neighbor_mix(const numerics::Matrix& h, const Adjacency& adj, bool transposed) {
  const std::size_t n = h.rows();
  if (adj.size() != n)
    throw DimensionError("neighbor_mix: adjacency " + std::to_string(adj.size()) +
                         " nodes vs h " + h.shape_str());
  const std::size_t k = h.cols();
  numerics::Matrix out(n, k);
  if (adj.is_complete()) {
    // Complete graph: row sums minus the own row; A is symmetric.
    std::vector<double> total(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* r = h.row_ptr(i);
      for (std::size_t c = 0; c < k; ++c) total[c] += r[c];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double* r = h.row_ptr(i);
      double* o = out.row_ptr(i);
      for (std::size_t c = 0; c < k; ++c) o[c] = total[c] - r[c];
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool edge = transposed ? adj.at(j, i) : adj.at(i, j);
      if (!edge) continue;
      const double* r = h.row_ptr(j);
      double* o = out.row_ptr(i);
      for (std::size_t c = 0; c < k; ++c) o[c] += r[c];
    }
  return out;
}

GcnLayerOut gcn_layer(const numerics::Matrix& h, const Adjacency& adj,
                      const numerics::Matrix& w_self, const numerics::Matrix& w_other,
                      const numerics::Matrix& bias, numerics::Activation activation) {
  if (!w_self.same_shape(w_other))
    throw DimensionError("gcn_layer: w_self " + w_self.shape_str() + " vs w_other " +
                         w_other.shape_str());
  const double inv_n = 1.0 / static_cast<double>(h.rows());
  numerics::Matrix mixed = neighbor_mix(h, adj, false);
  numerics::Matrix preact = numerics::matmul(mixed, w_other);
  numerics::scale_inplace(preact, inv_n);
  numerics::add_inplace(preact, numerics::matmul(h, w_self));
  numerics::add_row_broadcast(preact, bias);
  GcnLayerOut out;
  out.output = numerics::activate(preact, activation);
  out.preact = std::move(preact);
  return out;
}

PoolMode pool_mode_from_name(std::string_view name) {
  if (name == "max") return PoolMode::kMax;
  if (name == "avg") return PoolMode::kAvg;
  throw ConfigError("pool: '" + std::string(name) + "' is not 'max' or 'avg'");
}

std::string pool_mode_name(PoolMode mode) { return mode == PoolMode::kMax ? "max" : "avg"; }

numerics::Matrix pool(const numerics::Matrix& h, PoolMode mode) {
  if (h.rows() == 0) throw DimensionError("pool: empty input");
  numerics::Matrix out(1, h.cols());
  if (mode == PoolMode::kMax) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      double best = h(0, c);
      for (std::size_t i = 1; i < h.rows(); ++i) best = std::max(best, h(i, c));
      out(0, c) = best;
    }
  } else {
    const double inv_n = 1.0 / static_cast<double>(h.rows());
    for (std::size_t c = 0; c < h.cols(); ++c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < h.rows(); ++i) sum += h(i, c);
      out(0, c) = sum * inv_n;
    }
  }
  return out;
}

}  // namespace picrl::critics
