#include "rllab/ppo/config.hpp"

#include <cmath>

#include "rllab/errors.hpp"

namespace rllab::ppo {

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kClip: return "clip";
    case Variant::kAdaptiveKl: return "kl";
    case Variant::kCim: return "cim";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "clip") return Variant::kClip;
  if (name == "kl") return Variant::kAdaptiveKl;
  if (name == "cim") return Variant::kCim;
  throw ContractError("unknown algorithm '" + std::string(name) + "' (expected clip|kl|cim)");
}

std::string_view to_string(SigmaMode mode) {
  return mode == SigmaMode::kFixed ? "fixed" : "silverman";
}

SigmaMode parse_sigma_mode(std::string_view name) {
  if (name == "fixed") return SigmaMode::kFixed;
  if (name == "silverman") return SigmaMode::kSilverman;
  throw ContractError("unknown sigma mode '" + std::string(name) + "' (expected fixed|silverman)");
}

void PenaltyConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  auto nonnegative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  require(epsilon > 0.0 && !std::isnan(epsilon), "epsilon must be positive");
  require(nonnegative(beta_init), "beta_init must be nonnegative and finite");
  require(positive(d_targ), "d_targ must be positive");
  require(nonnegative(alpha), "alpha must be nonnegative and finite");
  require(positive(bandwidth), "bandwidth must be positive");
  require(cim_draws >= 1, "cim_draws must be at least 1");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(positive(actor_lr), "actor_lr must be positive");
  require(positive(critic_lr), "critic_lr must be positive");
  require(batch_size >= 1, "batch_size must be at least 1");
  require(actor_steps >= 1, "actor_steps must be at least 1");
  require(critic_steps >= 1, "critic_steps must be at least 1");
  require(!hidden.empty(), "hidden must list at least one layer width");
  for (std::size_t w : hidden) require(w >= 1, "hidden layer widths must be positive");
  require(positive(value_scale), "value_scale must be positive");
  require(std::isfinite(init_log_std), "init_log_std must be finite");
}

}  // namespace rllab::ppo
