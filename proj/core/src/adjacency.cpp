#include "picrl/adjacency.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::critics {

Adjacency Adjacency::complete(std::size_t n) {
  if (n < 1) throw ConfigError("adjacency: empty graph");
  Adjacency a;
  a.n_ = n;
  a.complete_ = true;
  a.bits_.assign(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) a.bits_[i * n + i] = 0;
  return a;
}

Adjacency Adjacency::nearest_neighbors(const numerics::Matrix& positions, std::size_t k) {
  const std::size_t n = positions.rows();
  if (n < 1) throw ConfigError("adjacency: empty graph");
  if (positions.cols() != 2)
    throw DimensionError("adjacency: positions must be Nx2, got " + positions.shape_str());
  if (k >= n)
    throw ConfigError("adjacency: knn k=" + std::to_string(k) + " must be below the node count " +
                      std::to_string(n));
  Adjacency a;
  a.n_ = n;
  a.complete_ = false;
  a.bits_.assign(n * n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const double dxx = positions(i, 0) - positions(x, 0);
      const double dxy = positions(i, 1) - positions(x, 1);
      const double dyx = positions(i, 0) - positions(y, 0);
      const double dyy = positions(i, 1) - positions(y, 1);
      const double dx = dxx * dxx + dxy * dxy;
      const double dy = dyx * dyx + dyy * dyy;
      if (dx != dy) return dx < dy;
      return x < y;
    });
    for (std::size_t s = 0; s < k; ++s) a.bits_[i * n + order[s]] = 1;
  }
  return a;
}

numerics::Matrix Adjacency::dense() const {
  numerics::Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) m[i] = bits_[i];
  return m;
}

std::string GraphSpec::to_string() const {
  return mode == GraphMode::kFull ? "full" : "knn:" + std::to_string(k);
}

GraphSpec parse_graph_spec(std::string_view text) {
  if (text == "full") return GraphSpec{GraphMode::kFull, 0};
  constexpr std::string_view prefix = "knn:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string num(text.substr(prefix.size()));
    std::size_t pos = 0;
    unsigned long k = 0;
    try {
      k = std::stoul(num, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != num.size() || k < 1)
      throw ConfigError("graph: bad neighbor count in '" + std::string(text) + "'");
    return GraphSpec{GraphMode::kKnn, static_cast<std::size_t>(k)};
  }
  throw ConfigError("graph: '" + std::string(text) + "' is not 'full' or 'knn:K'");
}

Adjacency build_adjacency(const numerics::Matrix& positions, const GraphSpec& spec) {
  if (spec.mode == GraphMode::kFull) return Adjacency::complete(positions.rows());
  return Adjacency::nearest_neighbors(positions, spec.k);
}

}  // namespace picrl::critics
