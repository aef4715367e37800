#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rllab/ppo/config.hpp"

namespace rllab::harness {

// Experiment description read from a flat key = value file. Every key is
// listed in config_keys(); anything else is rejected.
struct RunConfig {
  std::optional<ppo::Variant> algo;
  std::string env = "pendulum";
  std::vector<std::uint64_t> seeds = {0};
  std::size_t iterations = 100;
  ppo::PenaltyConfig penalty;
  std::string out_dir = "runs";
  // Off by default so repeated runs produce byte-identical CSVs.
  bool record_wall_time = false;

  // Throws ContractError on a missing algo, unknown env, empty seed list or
  // an invalid penalty field.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

const std::vector<std::string>& config_keys();

// Sets one key from its text form. Throws ContractError on an unknown key or
// an unparsable value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// Lines are `key = value`; blank lines and lines starting with # or ; are
// skipped, as is a leading [section] header.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path);

std::string format_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

// Shortest text that reads back to the same double.
std::string format_double(double value);

}  // namespace rllab::harness
