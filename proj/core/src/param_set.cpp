#include "picrl/param_set.hpp"

#include <cmath>

#include "picrl/error.hpp"

namespace picrl::numerics {

Param& ParamSet::add(std::string name, std::size_t rows, std::size_t cols) {
  return add(std::move(name), Matrix(rows, cols));
}

Param& ParamSet::add(std::string name, Matrix value) {
  if (has(name)) throw ConfigError("ParamSet: duplicate parameter name '" + name + "'");
  Matrix grad(value.rows(), value.cols());
  params_.push_back(Param{std::move(name), std::move(value), std::move(grad)});
  return params_.back();
}

bool ParamSet::has(std::string_view name) const {
  for (const auto& p : params_)
    if (p.name == name) return true;
  return false;
}

Param& ParamSet::at(std::string_view name) {
  for (auto& p : params_)
    if (p.name == name) return p;
  throw ConfigError("ParamSet: no parameter named '" + std::string(name) + "'");
}

const Param& ParamSet::at(std::string_view name) const {
  for (const auto& p : params_)
    if (p.name == name) return p;
  throw ConfigError("ParamSet: no parameter named '" + std::string(name) + "'");
}

void ParamSet::zero_grads() {
  for (auto& p : params_) p.grad.set_zero();
}

std::size_t ParamSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

AdamState::AdamState(const ParamSet& params, AdamConfig cfg) : cfg_(cfg) {
  m_.reserve(params.count());
  v_.reserve(params.count());
  for (const auto& p : params) {
    m_.emplace_back(p.value.rows(), p.value.cols());
    v_.emplace_back(p.value.rows(), p.value.cols());
  }
}

void AdamState::step(ParamSet& params, double lr) {
  if (lr < 0.0) throw ConfigError("adam: negative learning rate");
  if (params.count() != m_.size()) throw Fault("adam: parameter set size changed");
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t k = 0; k < params.count(); ++k) {
    Param& p = params[k];
    if (!p.grad.all_finite()) throw Fault("adam: non-finite gradient for parameter '" + p.name + "'");
    Matrix& m = m_[k];
    Matrix& v = v_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g;
      v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p.value[i] -= lr * m_hat / (std::sqrt(v_hat) + cfg_.eps);
    }
  }
}

}  // namespace picrl::numerics
