#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "rllab/autodiff/mlp.hpp"
#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/policy/gaussian_tape.hpp"

namespace rllab::ppo {

// pi(a|s) = N(f(s), diag(exp(log_std))^2): an MLP mean head plus a
// state-independent log standard deviation. Parameter layout is the mean
// network's [W0, b0, ...] followed by log_std (1, action_dim).
class GaussianPolicy {
 public:
  GaussianPolicy(std::size_t state_dim, std::size_t action_dim, const std::vector<std::size_t>& hidden,
                 double init_log_std = 0.0);

  // Mean head scaled by 0.01 so the initial policy is centred on zero.
  void initialize(std::mt19937_64& rng);

  std::size_t state_dim() const { return net_.input_width(); }
  std::size_t action_dim() const { return net_.output_width(); }
  const ad::Mlp& mean_network() const { return net_; }

  std::vector<ad::Tensor>& parameters() { return params_; }
  const std::vector<ad::Tensor>& parameters() const { return params_; }
  const ad::Tensor& log_std() const { return params_.back(); }

  policy::DiagGaussian distribution(std::span<const double> state) const;
  ad::Tensor mean_batch(const ad::Tensor& states) const;
  // Effective (floored) log std broadcast to `rows` rows.
  ad::Tensor log_std_batch(std::size_t rows) const;
  // Number of log_std entries currently below the floor.
  std::size_t clamped_dimensions() const;

  std::vector<ad::Var> bind(ad::Tape& tape) const;
  policy::GaussianVars forward(ad::Tape& tape, const ad::Tensor& states, std::span<const ad::Var> params) const;

 private:
  ad::Mlp net_;
  std::vector<ad::Tensor> params_;
};

}  // namespace rllab::ppo
