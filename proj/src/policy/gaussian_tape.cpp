#include "rllab/policy/gaussian_tape.hpp"

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"

namespace rllab::policy {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

void require_batch(const GaussianVars& dist, const ad::Tensor& other, const char* what) {
  require(dist.mean.shape() == dist.log_std.shape(), "Gaussian batch: mean and log_std shapes differ");
  require(other.shape() == dist.mean.shape(), std::string(what) + " shape " + ad::shape_string(other.shape()) +
                                                  " does not match the distribution batch " +
                                                  ad::shape_string(dist.mean.shape()));
}

}  // namespace

ad::Var log_prob(const GaussianVars& dist, const ad::Tensor& actions) {
  require_batch(dist, actions, "actions");
  ad::Tape& tape = *dist.mean.tape();
  const ad::Var a = tape.constant(actions);
  const ad::Var z = (a - dist.mean) * ad::exp(-dist.log_std);
  const ad::Var per_dim = (-dist.log_std - kHalfLog2Pi) - 0.5 * ad::square(z);
  return ad::sum_cols(per_dim);
}

ad::Var reparameterized_sample(const GaussianVars& dist, const ad::Tensor& noise) {
  require_batch(dist, noise, "noise");
  ad::Tape& tape = *dist.mean.tape();
  return dist.mean + ad::exp(dist.log_std) * tape.constant(noise);
}

ad::Var kl_from_fixed(const ad::Tensor& old_mean, const ad::Tensor& old_log_std, const GaussianVars& updated) {
  require_batch(updated, old_mean, "old mean");
  require_batch(updated, old_log_std, "old log_std");
  ad::Tape& tape = *updated.mean.tape();
  const ad::Var mu_old = tape.constant(old_mean);
  const ad::Var ls_old = tape.constant(old_log_std);
  const ad::Var var_old = ad::exp(2.0 * ls_old);
  const ad::Var spread = var_old + ad::square(mu_old - updated.mean);
  const ad::Var per_dim = (updated.log_std - ls_old) + 0.5 * spread * ad::exp(-2.0 * updated.log_std) - 0.5;
  return ad::sum_cols(per_dim);
}

}  // namespace rllab::policy
