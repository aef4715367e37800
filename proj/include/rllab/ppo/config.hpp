#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rllab/correntropy/kernel.hpp"

namespace rllab::ppo {

enum class Variant { kClip, kAdaptiveKl, kCim };

// clip|kl|cim
std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view name);

enum class SigmaMode { kFixed, kSilverman };

// fixed|silverman
std::string_view to_string(SigmaMode mode);
SigmaMode parse_sigma_mode(std::string_view name);

struct PenaltyConfig {
  Variant variant = Variant::kClip;
  double epsilon = 0.2;
  double beta_init = 0.5;
  double d_targ = 0.1;
  double alpha = 1.0;
  corr::KernelFamily kernel = corr::KernelFamily::kGaussian;
  double bandwidth = 1.0;
  SigmaMode sigma_mode = SigmaMode::kFixed;
  // Noise rows drawn per state for the CIM estimate.
  std::size_t cim_draws = 1;

  double gamma = 0.9;
  double actor_lr = 1e-4;
  double critic_lr = 2e-4;
  // Transitions collected per iteration.
  std::size_t batch_size = 32;
  std::size_t actor_steps = 10;
  std::size_t critic_steps = 10;

  std::vector<std::size_t> hidden = {64, 64};
  // Fixed multiplier on the critic's linear output, V(s) = value_scale * net(s).
  double value_scale = 1.0;
  double init_log_std = 0.0;

  // Throws ContractError naming the first invalid field. Penalty weights may
  // be zero (penalty disabled) and epsilon may be +inf (clip disabled).
  void validate() const;
};

}  // namespace rllab::ppo
