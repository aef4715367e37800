#include "rllab/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rllab/errors.hpp"

namespace rllab::envs {

double wrap_angle(double theta) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::fmod(theta + kPi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  return wrapped - kPi;
}

PendulumTransition pendulum_dynamics(const PendulumState& state, double torque, const PendulumParams& params) {
  require(std::isfinite(state.theta) && std::isfinite(state.theta_dot), "pendulum state must be finite");
  require(std::isfinite(torque), "pendulum torque must be finite");
  const double u = std::clamp(torque, -params.max_torque, params.max_torque);
  const double g = params.gravity, m = params.mass, l = params.length, dt = params.dt;

  const double th = wrap_angle(state.theta);
  PendulumTransition out;
  out.reward = -(th * th + 0.1 * state.theta_dot * state.theta_dot + 0.001 * u * u);

  const double accel = 3.0 * g / (2.0 * l) * std::sin(state.theta) + 3.0 / (m * l * l) * u;
  const double speed = std::clamp(state.theta_dot + accel * dt, -params.max_speed, params.max_speed);
  out.next.theta_dot = speed;
  out.next.theta = wrap_angle(state.theta + speed * dt);
  return out;
}

double pendulum_energy(const PendulumState& state, const PendulumParams& params) {
  return 0.5 * state.theta_dot * state.theta_dot + 3.0 * params.gravity / (2.0 * params.length) * std::cos(state.theta);
}

Pendulum::Pendulum(PendulumParams params) : params_(params) {
  spec_.name = "pendulum";
  spec_.state_dim = 3;
  spec_.action_dim = 1;
  spec_.action_low = {-params_.max_torque};
  spec_.action_high = {params_.max_torque};
  spec_.max_steps = params_.max_steps;
}

std::vector<double> Pendulum::reset(Rng& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> speed(-1.0, 1.0);
  state_.theta = angle(rng);
  state_.theta_dot = speed(rng);
  steps_ = 0;
  return observation();
}

void Pendulum::set_state(const PendulumState& state) {
  require(std::isfinite(state.theta) && std::isfinite(state.theta_dot), "pendulum state must be finite");
  state_ = state;
}

std::vector<double> Pendulum::observation() const {
  return {std::cos(state_.theta), std::sin(state_.theta), state_.theta_dot};
}

StepResult Pendulum::step(std::span<const double> action) {
  const std::vector<double> u = clamp_action(action);
  const PendulumTransition t = pendulum_dynamics(state_, u[0], params_);
  state_ = t.next;
  ++steps_;
  StepResult result;
  result.next_state = observation();
  result.reward = t.reward;
  result.done = steps_ >= params_.max_steps;
  result.info["theta"] = state_.theta;
  result.info["torque"] = u[0];
  return result;
}

}  // namespace rllab::envs
