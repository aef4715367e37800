#include "rllab/autodiff/optimizer.hpp"

#include <cmath>

#include "rllab/errors.hpp"

namespace rllab::ad {

Optimizer::Optimizer(OptimizerKind kind, double learning_rate) : kind_(kind), lr_(learning_rate) {
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning rate must be positive and finite");
}

StepOutcome Optimizer::step(std::span<Tensor> params, std::span<const Tensor> grads) {
  require(params.size() == grads.size(), "optimizer: parameter and gradient counts differ");
  for (std::size_t i = 0; i < params.size(); ++i)
    require(params[i].shape() == grads[i].shape(), "optimizer: gradient " + std::to_string(i) + " has shape " +
                                                       shape_string(grads[i].shape()) + ", parameter has " +
                                                       shape_string(params[i].shape()));
  for (const Tensor& g : grads)
    if (!g.all_finite()) return StepOutcome{false, true};

  if (kind_ == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < params.size(); ++i)
      for (std::size_t j = 0; j < params[i].size(); ++j) params[i][j] -= lr_ * grads[i][j];
    ++steps_;
    return {};
  }

  if (m_.empty()) {
    for (const Tensor& p : params) {
      m_.push_back(Tensor::zeros(p.shape()));
      v_.push_back(Tensor::zeros(p.shape()));
    }
  }
  require(m_.size() == params.size(), "optimizer: parameter list changed between steps");
  ++steps_;
  const double t = static_cast<double>(steps_);
  const double correction1 = 1.0 - std::pow(kBeta1, t);
  const double correction2 = 1.0 - std::pow(kBeta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(m_[i].shape() == params[i].shape(), "optimizer: parameter shape changed between steps");
    for (std::size_t j = 0; j < params[i].size(); ++j) {
      const double g = grads[i][j];
      m_[i][j] = kBeta1 * m_[i][j] + (1.0 - kBeta1) * g;
      v_[i][j] = kBeta2 * v_[i][j] + (1.0 - kBeta2) * g * g;
      const double m_hat = m_[i][j] / correction1;
      const double v_hat = v_[i][j] / correction2;
      params[i][j] -= lr_ * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
  }
  return {};
}

}  // namespace rllab::ad
