#include "rllab/envs/pointmass.hpp"

#include <algorithm>
#include <cmath>

#include "rllab/errors.hpp"

namespace rllab::envs {

PointMassTransition pointmass_dynamics(const PointMassState& state, double force, const PointMassParams& params) {
  require(std::isfinite(state.x) && std::isfinite(state.v), "point-mass state must be finite");
  require(std::isfinite(force), "point-mass force must be finite");
  const double f = std::clamp(force, -params.max_force, params.max_force);
  PointMassTransition out;
  out.reward = params.reward_scale * -(state.x * state.x + 0.01 * f * f);
  out.next.v = state.v + params.dt * f;
  out.next.x = state.x + params.dt * out.next.v;
  return out;
}

PointMass::PointMass(PointMassParams params) : params_(params) {
  spec_.name = "pointmass";
  spec_.state_dim = 2;
  spec_.action_dim = 1;
  spec_.action_low = {-params_.max_force};
  spec_.action_high = {params_.max_force};
  spec_.max_steps = params_.max_steps;
}

std::vector<double> PointMass::reset(Rng& rng) {
  std::uniform_real_distribution<double> position(-1.0, 1.0);
  state_.x = position(rng);
  state_.v = 0.0;
  steps_ = 0;
  return observation();
}

void PointMass::set_state(const PointMassState& state) {
  require(std::isfinite(state.x) && std::isfinite(state.v), "point-mass state must be finite");
  state_ = state;
}

std::vector<double> PointMass::observation() const { return {state_.x, state_.v}; }

StepResult PointMass::step(std::span<const double> action) {
  const std::vector<double> f = clamp_action(action);
  const PointMassTransition t = pointmass_dynamics(state_, f[0], params_);
  state_ = t.next;
  ++steps_;
  StepResult result;
  result.next_state = observation();
  result.reward = t.reward;
  result.done = steps_ >= params_.max_steps;
  result.info["force"] = f[0];
  return result;
}

}  // namespace rllab::envs
