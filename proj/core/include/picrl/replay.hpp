#pragma once

#include <vector>

#include "picrl/matrix.hpp"
#include "picrl/rng.hpp"

namespace picrl::learner {

// One joint experience tuple; agent blocks flattened side by side.
struct Transition {
  std::vector<double> obs;       // N * obs_dim
  std::vector<double> act;       // N * act_dim
  std::vector<double> reward;    // N
  std::vector<double> next_obs;  // N * obs_dim
  bool terminal = false;
};

// Column-stacked minibatch.
struct Batch {
  numerics::Matrix obs, act, reward, next_obs;  // B x ...
  std::vector<char> terminal;                   // B
  std::size_t size() const { return obs.rows(); }
};

// Fixed-capacity ring: overwrites the oldest transition once full. Storage
// grows lazily up to the capacity.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return items_[i]; }

  // Uniform with replacement; requires size() >= batch.
  std::vector<std::size_t> sample_indices(std::size_t batch, Rng& rng) const;
  Batch sample(std::size_t batch, Rng& rng) const;
  Batch gather(const std::vector<std::size_t>& indices) const;

 private:
  std::size_t capacity_;
  std::size_t cursor_ = 0;  // next slot to overwrite once full
  std::vector<Transition> items_;
};

}  // namespace picrl::learner
