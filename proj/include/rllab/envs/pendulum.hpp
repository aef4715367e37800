#pragma once

#include "rllab/envs/env.hpp"

namespace rllab::envs {

struct PendulumParams {
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double dt = 0.05;
  double max_speed = 8.0;
  double max_torque = 2.0;
  std::size_t max_steps = 200;
};

// theta = 0 is upright.
struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
};

struct PendulumTransition {
  PendulumState next;
  double reward = 0.0;
};

double wrap_angle(double theta);

// One step of the swing-up dynamics: semi-implicit Euler on
// theta'' = 3g/(2l) sin(theta) + 3/(m l^2) u, speed clamped, angle wrapped.
// Reward uses the pre-step state: -(theta^2 + 0.1 theta_dot^2 + 0.001 u^2).
PendulumTransition pendulum_dynamics(const PendulumState& state, double torque,
                                     const PendulumParams& params = {});

// Per-unit-inertia mechanical energy 1/2 theta_dot^2 + 3g/(2l) cos(theta),
// conserved by the continuous dynamics when u = 0.
double pendulum_energy(const PendulumState& state, const PendulumParams& params = {});

class Pendulum final : public Environment {
 public:
  explicit Pendulum(PendulumParams params = {});

  const EnvSpec& spec() const override { return spec_; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(std::span<const double> action) override;
  std::vector<double> observation() const override;
  std::size_t elapsed_steps() const override { return steps_; }

  const PendulumState& state() const { return state_; }
  void set_state(const PendulumState& state);
  const PendulumParams& params() const { return params_; }

 private:
  PendulumParams params_;
  EnvSpec spec_;
  PendulumState state_;
  std::size_t steps_ = 0;
};

}  // namespace rllab::envs
