#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rllab::envs {

using Rng = std::mt19937_64;

struct EnvSpec {
  std::string name;
  std::size_t state_dim = 0;
  std::size_t action_dim = 0;
  std::vector<double> action_low;
  std::vector<double> action_high;
  std::size_t max_steps = 0;
};

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;
  std::map<std::string, double> info;
};

// Episodic continuous-control task. Instances are single-owner state machines.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual std::vector<double> reset(Rng& rng) = 0;
  // The action is clamped to the action bounds before use.
  virtual StepResult step(std::span<const double> action) = 0;
  virtual std::vector<double> observation() const = 0;
  virtual std::size_t elapsed_steps() const = 0;

  std::vector<double> clamp_action(std::span<const double> action) const;
};

// pendulum|pointmass
std::unique_ptr<Environment> make_environment(std::string_view name);
std::vector<std::string> environment_names();

}  // namespace rllab::envs
