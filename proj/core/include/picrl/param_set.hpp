#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "picrl/matrix.hpp"

namespace picrl::numerics {

// One named trainable tensor with a same-shaped gradient slot.
struct Param {
  std::string name;
  Matrix value;
  Matrix grad;
};

// Ordered collection of named parameters. Names are unique; order is the
// iteration order for the optimizer, checkpoints and gradient checks.
class ParamSet {
 public:
  Param& add(std::string name, std::size_t rows, std::size_t cols);
  Param& add(std::string name, Matrix value);

  std::size_t count() const { return params_.size(); }
  Param& operator[](std::size_t i) { return params_[i]; }
  const Param& operator[](std::size_t i) const { return params_[i]; }

  bool has(std::string_view name) const;
  Param& at(std::string_view name);
  const Param& at(std::string_view name) const;

  void zero_grads();
  std::size_t scalar_count() const;  // total number of trainable scalars

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::vector<Param> params_;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Per-parameter first/second moment accumulators plus the shared step count.
class AdamState {
 public:
  explicit AdamState(const ParamSet& params, AdamConfig cfg = {});

  // One Adam update with bias correction. Reads the gradient slots of
  // `params` and leaves them untouched (the caller zeroes them).
  // Throws Fault naming the parameter on a non-finite gradient.
  void step(ParamSet& params, double lr);

  std::uint64_t steps() const { return t_; }
  const AdamConfig& config() const { return cfg_; }
  const Matrix& first_moment(std::size_t i) const { return m_[i]; }
  const Matrix& second_moment(std::size_t i) const { return v_[i]; }

 private:
  AdamConfig cfg_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  std::uint64_t t_ = 0;
};

}  // namespace picrl::numerics
