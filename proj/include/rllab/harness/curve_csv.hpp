#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rllab/ppo/trainer.hpp"

namespace rllab::harness {

// Raised when a CSV does not carry the learning-curve header or has
// malformed rows.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct CurveRow {
  std::size_t iteration = 0;
  std::size_t env_steps = 0;
  double return_mean = 0.0;
  double return_std_over_seeds = 0.0;
  double penalty_value = 0.0;
  double beta = 0.0;
  double wall_time_s = 0.0;
  std::size_t nonfinite_grad_count = 0;

  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

inline constexpr const char* kCurveHeader =
    "iteration,env_steps,return_mean,return_std_over_seeds,penalty_value,beta,wall_time_s,nonfinite_grad_count";

CurveRow to_row(const ppo::IterationRecord& record, bool record_wall_time);

void write_curve_header(std::ostream& out);
void write_curve_row(std::ostream& out, const CurveRow& row);
void write_curve_csv(const std::string& path, const std::vector<CurveRow>& rows);

std::vector<CurveRow> parse_curve_csv(const std::string& text);
std::vector<CurveRow> read_curve_csv(const std::string& path);

// Per-iteration mean over seeds; return_std_over_seeds is the population
// standard deviation of return_mean, nonfinite counts are summed. All inputs
// must cover the same iterations.
std::vector<CurveRow> aggregate_seeds(const std::vector<std::vector<CurveRow>>& runs);

}  // namespace rllab::harness
