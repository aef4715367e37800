#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rllab/autodiff/tensor.hpp"

namespace rllab::ad {

enum class OptimizerKind { kSgd, kAdam };

struct StepOutcome {
  bool applied = true;
  // Set when a gradient contained NaN/Inf; parameters and moments are left
  // untouched in that case.
  bool nonfinite_gradient = false;
};

class Optimizer {
 public:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  Optimizer(OptimizerKind kind, double learning_rate);

  StepOutcome step(std::span<Tensor> params, std::span<const Tensor> grads);

  OptimizerKind kind() const { return kind_; }
  double learning_rate() const { return lr_; }
  std::uint64_t step_count() const { return steps_; }
  const std::vector<Tensor>& first_moments() const { return m_; }
  const std::vector<Tensor>& second_moments() const { return v_; }

 private:
  OptimizerKind kind_;
  double lr_;
  std::uint64_t steps_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

}  // namespace rllab::ad
