#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rllab/autodiff/tensor.hpp"
#include "rllab/envs/env.hpp"
#include "rllab/policy/diag_gaussian.hpp"

namespace rllab {

// Consecutive transitions from one environment, possibly spanning episode
// boundaries. States and actions are stored row-major.
struct Trajectory {
  std::size_t state_dim = 0;
  std::size_t action_dim = 0;
  std::vector<double> states;
  std::vector<double> actions;  // sampled, before clamping
  std::vector<double> rewards;
  std::vector<double> log_probs;  // behavior policy, of the unclamped action
  std::vector<bool> dones;
  // Observation following the last transition; used to bootstrap the return
  // when the batch ends mid-episode.
  std::vector<double> final_state;
  // Undiscounted returns of episodes that finished inside this batch.
  std::vector<double> completed_returns;

  // Filled by compute_advantages().
  std::vector<double> returns;
  std::vector<double> values;
  std::vector<double> advantages;

  std::size_t size() const { return rewards.size(); }
  bool empty() const { return rewards.empty(); }
  ad::Tensor state_matrix() const;
  ad::Tensor action_matrix() const;
  std::span<const double> state(std::size_t t) const;
  std::span<const double> action(std::size_t t) const;
};

using PolicyFn = std::function<policy::DiagGaussian(std::span<const double> state)>;

// Keeps an environment running across calls so fixed-size batches can cut
// through episodes.
class RolloutWorker {
 public:
  RolloutWorker(envs::Environment& env, envs::Rng& rng);

  Trajectory collect(const PolicyFn& policy, std::size_t steps);
  // Episode return accumulated so far in the unfinished episode.
  double partial_return() const { return episode_return_; }
  std::size_t partial_steps() const { return episode_steps_; }

 private:
  envs::Environment& env_;
  envs::Rng& rng_;
  std::vector<double> obs_;
  double episode_return_ = 0.0;
  std::size_t episode_steps_ = 0;
  bool needs_reset_ = true;
};

// Resets the environment and runs until the episode ends or `horizon`
// transitions have been collected.
Trajectory rollout(envs::Environment& env, const PolicyFn& policy, std::size_t horizon, envs::Rng& rng);

}  // namespace rllab
