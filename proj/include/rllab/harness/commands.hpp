#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "rllab/harness/run_config.hpp"

namespace rllab::harness {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct TrainOutputs {
  std::vector<std::string> seed_csvs;
  std::string merged_csv;
  std::string config_copy;
};

// Runs every seed (at most `jobs` at a time; 0 means one worker per seed),
// writing each seed's CSV row by row so a failed run leaves its partial file
// behind, then the seed-aggregated CSV.
TrainOutputs run_training(const RunConfig& config, std::size_t jobs, std::ostream& log);

std::string seed_csv_path(const RunConfig& config, std::uint64_t seed);
std::string merged_csv_path(const RunConfig& config);

// Entry point for the `rllab` executable: train, diag-asymmetry, plot, verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rllab::harness
