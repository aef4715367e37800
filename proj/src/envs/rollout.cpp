#include "rllab/envs/rollout.hpp"

#include <cmath>
#include <random>

#include "rllab/errors.hpp"

namespace rllab {

ad::Tensor Trajectory::state_matrix() const {
  return ad::Tensor({size(), state_dim}, states);
}

ad::Tensor Trajectory::action_matrix() const {
  return ad::Tensor({size(), action_dim}, actions);
}

std::span<const double> Trajectory::state(std::size_t t) const {
  return std::span<const double>(states).subspan(t * state_dim, state_dim);
}

std::span<const double> Trajectory::action(std::size_t t) const {
  return std::span<const double>(actions).subspan(t * action_dim, action_dim);
}

RolloutWorker::RolloutWorker(envs::Environment& env, envs::Rng& rng) : env_(env), rng_(rng) {}

Trajectory RolloutWorker::collect(const PolicyFn& policy, std::size_t steps) {
  const envs::EnvSpec& spec = env_.spec();
  Trajectory traj;
  traj.state_dim = spec.state_dim;
  traj.action_dim = spec.action_dim;
  std::normal_distribution<double> normal;
  std::vector<double> noise(spec.action_dim);
  for (std::size_t t = 0; t < steps; ++t) {
    if (needs_reset_) {
      obs_ = env_.reset(rng_);
      episode_return_ = 0.0;
      episode_steps_ = 0;
      needs_reset_ = false;
    }
    const policy::DiagGaussian dist = policy(obs_);
    require(dist.dim() == spec.action_dim, "policy action dimension does not match the environment");
    for (double& e : noise) e = normal(rng_);
    const std::vector<double> action = dist.sample(noise);
    const double logp = dist.log_prob(action);
    const envs::StepResult step = env_.step(action);
    for (double s : step.next_state) require(std::isfinite(s), "environment produced a non-finite state");

    traj.states.insert(traj.states.end(), obs_.begin(), obs_.end());
    traj.actions.insert(traj.actions.end(), action.begin(), action.end());
    traj.rewards.push_back(step.reward);
    traj.log_probs.push_back(logp);
    traj.dones.push_back(step.done);

    episode_return_ += step.reward;
    ++episode_steps_;
    obs_ = step.next_state;
    if (step.done) {
      traj.completed_returns.push_back(episode_return_);
      needs_reset_ = true;
    }
  }
  traj.final_state = obs_;
  return traj;
}

Trajectory rollout(envs::Environment& env, const PolicyFn& policy, std::size_t horizon, envs::Rng& rng) {
  RolloutWorker worker(env, rng);
  Trajectory traj;
  for (std::size_t t = 0; t < horizon; ++t) {
    Trajectory step = worker.collect(policy, 1);
    if (t == 0) {
      traj = std::move(step);
    } else {
      traj.states.insert(traj.states.end(), step.states.begin(), step.states.end());
      traj.actions.insert(traj.actions.end(), step.actions.begin(), step.actions.end());
      traj.rewards.push_back(step.rewards[0]);
      traj.log_probs.push_back(step.log_probs[0]);
      traj.dones.push_back(step.dones[0]);
      traj.final_state = step.final_state;
      traj.completed_returns.insert(traj.completed_returns.end(), step.completed_returns.begin(),
                                    step.completed_returns.end());
    }
    if (traj.dones.back()) break;
  }
  return traj;
}

}  // namespace rllab
