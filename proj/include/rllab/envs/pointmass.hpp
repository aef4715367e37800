#pragma once

#include "rllab/envs/env.hpp"

namespace rllab::envs {

struct PointMassParams {
  double dt = 0.1;
  double max_force = 1.0;
  std::size_t max_steps = 100;
  // Scales the reward; 0 gives a task whose reward is identically zero.
  double reward_scale = 1.0;
};

struct PointMassState {
  double x = 0.0;
  double v = 0.0;
};

struct PointMassTransition {
  PointMassState next;
  double reward = 0.0;
};

// v' = v + dt f, x' = x + dt v', reward -(x^2 + 0.01 f^2) on the pre-step state.
PointMassTransition pointmass_dynamics(const PointMassState& state, double force,
                                       const PointMassParams& params = {});

class PointMass final : public Environment {
 public:
  explicit PointMass(PointMassParams params = {});

  const EnvSpec& spec() const override { return spec_; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(std::span<const double> action) override;
  std::vector<double> observation() const override;
  std::size_t elapsed_steps() const override { return steps_; }

  const PointMassState& state() const { return state_; }
  void set_state(const PointMassState& state);

 private:
  PointMassParams params_;
  EnvSpec spec_;
  PointMassState state_;
  std::size_t steps_ = 0;
};

}  // namespace rllab::envs
