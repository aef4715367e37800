#pragma once

#include "rllab/autodiff/mlp.hpp"
#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"
#include "rllab/correntropy/kernel.hpp"
#include "rllab/envs/rollout.hpp"
#include "rllab/policy/gaussian_tape.hpp"

namespace rllab::ppo {

class GaussianPolicy;

// Returns-to-go G_t = r_t + gamma G_{t+1}, reset after each done flag and
// bootstrapped with V(final_state) when the batch ends mid-episode;
// advantages G_t - V(s_t), optionally normalized to mean 0 / std 1
// (std floored at 1e-8). V(s) is the critic output times `value_scale`.
Trajectory compute_advantages(Trajectory traj, const ad::Mlp& critic, double gamma, bool normalize = true,
                              double value_scale = 1.0);

// Everything the surrogates need about one batch, frozen at the start of an
// iteration. Old-policy members are constants.
struct PolicyBatch {
  ad::Tensor states;          // (B, state_dim)
  ad::Tensor actions;         // (B, action_dim)
  ad::Tensor old_log_probs;   // (B, 1)
  ad::Tensor advantages;      // (B, 1)
  ad::Tensor old_mean;        // (B, action_dim)
  ad::Tensor old_log_std;     // (B, action_dim)

  std::size_t size() const { return states.rows(); }
};

PolicyBatch make_batch(const Trajectory& traj, const GaussianPolicy& old_policy);

// exp(log pi_new(a|s) - log pi_old(a|s)); (B, 1).
ad::Var importance_ratio(const PolicyBatch& batch, const policy::GaussianVars& updated);

// mean(min(rho A, clip(rho, 1 - eps, 1 + eps) A)).
ad::Var surrogate_clip(const PolicyBatch& batch, const policy::GaussianVars& updated, double epsilon);

// mean(rho A) - beta * mean_s KL(pi_old(.|s) || pi_new(.|s)).
ad::Var surrogate_kl(const PolicyBatch& batch, const policy::GaussianVars& updated, double beta);

// mean(rho A) - alpha * CIM(pi_old, pi_new), with the CIM estimated from
// paired reparameterized actions that share `noise` (B, action_dim).
ad::Var surrogate_cim(const PolicyBatch& batch, const policy::GaussianVars& updated, double alpha,
                      const corr::Kernel& kernel, const ad::Tensor& noise);

// Halve beta when d < d_targ / 1.5, double it when d > d_targ * 1.5.
double adaptive_beta_update(double beta, double measured_kl, double d_targ);

// Mean over batch states of the closed-form KL(old || current).
double mean_policy_kl(const PolicyBatch& batch, const GaussianPolicy& current);

// Fraction of batch ratios outside [1 - eps, 1 + eps].
double clip_fraction(const PolicyBatch& batch, const GaussianPolicy& current, double epsilon);

}  // namespace rllab::ppo
