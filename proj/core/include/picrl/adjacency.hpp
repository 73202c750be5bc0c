#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "picrl/matrix.hpp"

namespace picrl::critics {

// N x N binary adjacency with a zero diagonal. Directed: at(i, j) says node j
// feeds node i's neighborhood sum.
class Adjacency {
 public:
  Adjacency() = default;

  static Adjacency complete(std::size_t n);
  // Each node links to its k nearest nodes (Euclidean, ties to the lower
  // index). Asymmetric in general. Requires k < n.
  static Adjacency nearest_neighbors(const numerics::Matrix& positions, std::size_t k);

  std::size_t size() const { return n_; }
  bool is_complete() const { return complete_; }
  bool at(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }

  numerics::Matrix dense() const;  // 0/1 matrix

 private:
  std::size_t n_ = 0;
  bool complete_ = false;
  std::vector<std::uint8_t> bits_;
};

enum class GraphMode { kFull, kKnn };

struct GraphSpec {
  GraphMode mode = GraphMode::kFull;
  std::size_t k = 0;

  std::string to_string() const;
};

// Accepts "full" or "knn:K" with K >= 1.
GraphSpec parse_graph_spec(std::string_view text);

// positions: N x 2 agent coordinates (ignored for the full graph).
Adjacency build_adjacency(const numerics::Matrix& positions, const GraphSpec& spec);

}  // namespace picrl::critics
