#include "rllab/ppo/surrogates.hpp"

#include <cmath>
#include <vector>

#include "rllab/autodiff/ops.hpp"
#include "rllab/correntropy/correntropy.hpp"
#include "rllab/errors.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/ppo/policy_net.hpp"

namespace rllab::ppo {

Trajectory compute_advantages(Trajectory traj, const ad::Mlp& critic, double gamma, bool normalize,
                              double value_scale) {
  require(!traj.empty(), "compute_advantages: empty trajectory");
  const std::size_t n = traj.size();
  const ad::Tensor values = critic.forward(traj.state_matrix());
  require(values.cols() == 1, "compute_advantages: critic must have a single output");
  traj.values = values.values();
  for (double& v : traj.values) v *= value_scale;

  double next = 0.0;
  if (!traj.dones.back()) {
    require(traj.final_state.size() == traj.state_dim, "compute_advantages: missing bootstrap state");
    next = value_scale * critic.forward(ad::Tensor::unchecked({1, traj.state_dim}, traj.final_state))[0];
  }
  traj.returns.assign(n, 0.0);
  for (std::size_t t = n; t-- > 0;) {
    if (traj.dones[t]) next = 0.0;
    next = traj.rewards[t] + gamma * next;
    traj.returns[t] = next;
  }

  traj.advantages.resize(n);
  for (std::size_t t = 0; t < n; ++t) traj.advantages[t] = traj.returns[t] - traj.values[t];
  if (normalize) {
    double mean = 0.0;
    for (double a : traj.advantages) mean += a;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double a : traj.advantages) var += (a - mean) * (a - mean);
    const double sd = std::max(std::sqrt(var / static_cast<double>(n)), 1e-8);
    for (double& a : traj.advantages) a = (a - mean) / sd;
  }
  for (double a : traj.advantages) require(std::isfinite(a), "compute_advantages: non-finite advantage");
  return traj;
}

PolicyBatch make_batch(const Trajectory& traj, const GaussianPolicy& old_policy) {
  require(!traj.empty(), "make_batch: empty trajectory");
  require(traj.advantages.size() == traj.size(), "make_batch: advantages have not been computed");
  const std::size_t n = traj.size();
  PolicyBatch batch;
  batch.states = traj.state_matrix();
  batch.actions = traj.action_matrix();
  batch.old_log_probs = ad::Tensor({n, 1}, traj.log_probs);
  batch.advantages = ad::Tensor({n, 1}, traj.advantages);
  batch.old_mean = old_policy.mean_batch(batch.states);
  batch.old_log_std = old_policy.log_std_batch(n);
  return batch;
}

ad::Var importance_ratio(const PolicyBatch& batch, const policy::GaussianVars& updated) {
  ad::Tape& tape = *updated.mean.tape();
  const ad::Var log_new = policy::log_prob(updated, batch.actions);
  return ad::exp(log_new - tape.constant(batch.old_log_probs));
}

ad::Var surrogate_clip(const PolicyBatch& batch, const policy::GaussianVars& updated, double epsilon) {
  ad::Tape& tape = *updated.mean.tape();
  const ad::Var adv = tape.constant(batch.advantages);
  const ad::Var ratio = importance_ratio(batch, updated);
  const ad::Var clipped = ad::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return ad::mean(ad::minimum(ratio * adv, clipped * adv));
}

ad::Var surrogate_kl(const PolicyBatch& batch, const policy::GaussianVars& updated, double beta) {
  ad::Tape& tape = *updated.mean.tape();
  const ad::Var adv = tape.constant(batch.advantages);
  const ad::Var gain = ad::mean(importance_ratio(batch, updated) * adv);
  const ad::Var kl = ad::mean(policy::kl_from_fixed(batch.old_mean, batch.old_log_std, updated));
  return gain - beta * kl;
}

ad::Var surrogate_cim(const PolicyBatch& batch, const policy::GaussianVars& updated, double alpha,
                      const corr::Kernel& kernel, const ad::Tensor& noise) {
  ad::Tape& tape = *updated.mean.tape();
  const ad::Var adv = tape.constant(batch.advantages);
  const ad::Var gain = ad::mean(importance_ratio(batch, updated) * adv);
  const ad::Var penalty = corr::cim_penalty(kernel, batch.old_mean, batch.old_log_std, updated, noise);
  return gain - alpha * penalty;
}

double adaptive_beta_update(double beta, double measured_kl, double d_targ) {
  require(beta >= 0.0 && std::isfinite(beta), "adaptive_beta_update: beta must be nonnegative and finite");
  require(measured_kl >= 0.0, "adaptive_beta_update: measured KL must be nonnegative");
  require(d_targ > 0.0, "adaptive_beta_update: d_targ must be positive");
  if (measured_kl < d_targ / 1.5) return beta / 2.0;
  if (measured_kl > d_targ * 1.5) return beta * 2.0;
  return beta;
}

double mean_policy_kl(const PolicyBatch& batch, const GaussianPolicy& current) {
  const std::size_t n = batch.size(), k = batch.actions.cols();
  const ad::Tensor mean = current.mean_batch(batch.states);
  const ad::Tensor log_std = current.log_std_batch(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> mo(k), so(k), mn(k), sn(k);
    for (std::size_t j = 0; j < k; ++j) {
      mo[j] = batch.old_mean.at(i, j);
      so[j] = std::exp(batch.old_log_std.at(i, j));
      mn[j] = mean.at(i, j);
      sn[j] = std::exp(log_std.at(i, j));
    }
    total += policy::kl_closed_form(policy::DiagGaussian(mo, so), policy::DiagGaussian(mn, sn));
  }
  return total / static_cast<double>(n);
}

double clip_fraction(const PolicyBatch& batch, const GaussianPolicy& current, double epsilon) {
  const std::size_t n = batch.size(), k = batch.actions.cols();
  const ad::Tensor mean = current.mean_batch(batch.states);
  const ad::Tensor log_std = current.log_std_batch(n);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> mu(k), sigma(k), action(k);
    for (std::size_t j = 0; j < k; ++j) {
      mu[j] = mean.at(i, j);
      sigma[j] = std::exp(log_std.at(i, j));
      action[j] = batch.actions.at(i, j);
    }
    const double ratio = std::exp(policy::DiagGaussian(mu, sigma).log_prob(action) - batch.old_log_probs[i]);
    if (std::abs(ratio - 1.0) > epsilon) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(n);
}

}  // namespace rllab::ppo
