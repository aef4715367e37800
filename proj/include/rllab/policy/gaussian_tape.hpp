#pragma once

#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"

namespace rllab::policy {

// A batch of diagonal Gaussians recorded on a tape: one row per state, both
// members of shape (B, n).
struct GaussianVars {
  ad::Var mean;
  ad::Var log_std;
};

// Row-wise log density of `actions` (B, n); returns (B, 1).
ad::Var log_prob(const GaussianVars& dist, const ad::Tensor& actions);

// mean + exp(log_std) * noise, differentiable in both members.
ad::Var reparameterized_sample(const GaussianVars& dist, const ad::Tensor& noise);

// Row-wise KL(old || new) where the old batch is given as constants; returns (B, 1).
ad::Var kl_from_fixed(const ad::Tensor& old_mean, const ad::Tensor& old_log_std, const GaussianVars& updated);

}  // namespace rllab::policy
