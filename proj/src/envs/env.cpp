#include "rllab/envs/env.hpp"

#include <algorithm>
#include <cmath>

#include "rllab/envs/pendulum.hpp"
#include "rllab/envs/pointmass.hpp"
#include "rllab/errors.hpp"

namespace rllab::envs {

std::vector<double> Environment::clamp_action(std::span<const double> action) const {
  const EnvSpec& s = spec();
  require(action.size() == s.action_dim, "action length " + std::to_string(action.size()) + " does not match " +
                                             s.name + " action dimension " + std::to_string(s.action_dim));
  std::vector<double> out(action.size());
  for (std::size_t i = 0; i < action.size(); ++i) {
    require(std::isfinite(action[i]), "action must be finite");
    out[i] = std::clamp(action[i], s.action_low[i], s.action_high[i]);
  }
  return out;
}

std::unique_ptr<Environment> make_environment(std::string_view name) {
  if (name == "pendulum") return std::make_unique<Pendulum>();
  if (name == "pointmass") return std::make_unique<PointMass>();
  throw ContractError("unknown environment '" + std::string(name) + "' (expected pendulum|pointmass)");
}

std::vector<std::string> environment_names() { return {"pendulum", "pointmass"}; }

}  // namespace rllab::envs
