#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rllab/autodiff/mlp.hpp"
#include "rllab/autodiff/optimizer.hpp"
#include "rllab/envs/env.hpp"
#include "rllab/envs/rollout.hpp"
#include "rllab/ppo/config.hpp"
#include "rllab/ppo/policy_net.hpp"
#include "rllab/ppo/surrogates.hpp"

namespace rllab::ppo {

struct IterationRecord {
  std::size_t iteration = 0;
  // Mean undiscounted return of episodes finished during this iteration; when
  // none finished, the previous value is carried forward (before the first
  // finished episode, the running return extrapolated to a full episode).
  double return_mean = 0.0;
  std::size_t episodes_finished = 0;
  // Clip: fraction of clipped ratios; AdaptiveKL: measured mean KL;
  // CIM: CIM between old and updated policy.
  double penalty_value = 0.0;
  double beta = 0.0;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  std::size_t env_steps = 0;
  double wall_seconds = 0.0;
  std::size_t nonfinite_grad_count = 0;
  std::size_t sigma_clamp_events = 0;
  double kernel_bandwidth = 0.0;
};

struct RunLog {
  PenaltyConfig config;
  std::string env_name;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> records;
};

class Trainer {
 public:
  Trainer(PenaltyConfig config, const std::string& env_name, std::uint64_t seed);
  Trainer(PenaltyConfig config, std::unique_ptr<envs::Environment> env, std::uint64_t seed);

  // One rollout / critic fit / actor update / controller cycle.
  IterationRecord iterate();

  RunLog train(std::size_t iterations, const std::function<void(const IterationRecord&)>& on_record = {});

  const GaussianPolicy& policy() const { return policy_; }
  GaussianPolicy& policy() { return policy_; }
  const ad::Mlp& critic() const { return critic_; }
  ad::Mlp& critic() { return critic_; }
  double beta() const { return beta_; }
  const PenaltyConfig& config() const { return config_; }
  const envs::Environment& environment() const { return *env_; }
  // Batch used by the most recent iterate() call.
  const std::optional<PolicyBatch>& last_batch() const { return last_batch_; }

 private:
  double fit_critic(const Trajectory& traj);
  double update_actor(const PolicyBatch& batch, const corr::Kernel& kernel, std::size_t& nonfinite);
  ad::Tensor draw_noise(std::size_t rows);

  PenaltyConfig config_;
  std::unique_ptr<envs::Environment> env_;
  std::uint64_t seed_;
  envs::Rng init_rng_;
  envs::Rng env_rng_;
  envs::Rng noise_rng_;
  GaussianPolicy policy_;
  ad::Mlp critic_;
  ad::Optimizer actor_opt_;
  ad::Optimizer critic_opt_;
  RolloutWorker worker_;
  double beta_;
  std::size_t iteration_ = 0;
  std::size_t env_steps_ = 0;
  double last_return_ = 0.0;
  bool have_return_ = false;
  std::optional<PolicyBatch> last_batch_;
  ad::Tensor last_noise_;
};

RunLog train(const PenaltyConfig& config, const std::string& env_name, std::uint64_t seed, std::size_t iterations);

// Mean undiscounted return of `episodes` full episodes under the stochastic policy.
double evaluate_policy(const GaussianPolicy& policy, const std::string& env_name, std::size_t episodes,
                       std::uint64_t seed);

}  // namespace rllab::ppo
