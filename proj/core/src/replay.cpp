#include "picrl/replay.hpp"

#include <algorithm>

#include "picrl/error.hpp"

namespace picrl::learner {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity < 1) throw ConfigError("replay: capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[cursor_] = std::move(t);
  cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch, Rng& rng) const {
  if (size() < batch)
    throw Fault("replay: " + std::to_string(size()) + " stored transitions, batch of " +
                std::to_string(batch) + " requested");
  std::vector<std::size_t> idx(batch);
  for (std::size_t i = 0; i < batch; ++i)
    idx[i] = static_cast<std::size_t>(rng.integer(size()));
  return idx;
}

Batch ReplayBuffer::sample(std::size_t batch, Rng& rng) const {
  return gather(sample_indices(batch, rng));
}

Batch ReplayBuffer::gather(const std::vector<std::size_t>& indices) const {
  if (indices.empty()) throw Fault("replay: empty batch");
  const Transition& first = items_.at(indices.front());
  Batch b;
  b.obs = numerics::Matrix(indices.size(), first.obs.size());
  b.act = numerics::Matrix(indices.size(), first.act.size());
  b.reward = numerics::Matrix(indices.size(), first.reward.size());
  b.next_obs = numerics::Matrix(indices.size(), first.next_obs.size());
  b.terminal.resize(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const Transition& t = items_.at(indices[r]);
    std::copy(t.obs.begin(), t.obs.end(), b.obs.row_ptr(r));
    std::copy(t.act.begin(), t.act.end(), b.act.row_ptr(r));
    std::copy(t.reward.begin(), t.reward.end(), b.reward.row_ptr(r));
    std::copy(t.next_obs.begin(), t.next_obs.end(), b.next_obs.row_ptr(r));
    b.terminal[r] = t.terminal ? 1 : 0;
  }
  return b;
}

}  // namespace picrl::learner
