#include "rllab/harness/curve_csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rllab/harness/run_config.hpp"

namespace rllab::harness {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double cell_real(const std::string& cell, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
    throw SchemaError("line " + std::to_string(line) + ": '" + cell + "' is not a number");
  return v;
}

std::size_t cell_count(const std::string& cell, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(cell.c_str(), &end, 10);
  if (cell.empty() || cell[0] == '-' || end != cell.c_str() + cell.size() || errno == ERANGE)
    throw SchemaError("line " + std::to_string(line) + ": '" + cell + "' is not a count");
  return static_cast<std::size_t>(v);
}

}  // namespace

CurveRow to_row(const ppo::IterationRecord& r, bool record_wall_time) {
  CurveRow row;
  row.iteration = r.iteration;
  row.env_steps = r.env_steps;
  row.return_mean = r.return_mean;
  row.penalty_value = r.penalty_value;
  row.beta = r.beta;
  row.wall_time_s = record_wall_time ? r.wall_seconds : 0.0;
  row.nonfinite_grad_count = r.nonfinite_grad_count;
  return row;
}

void write_curve_header(std::ostream& out) { out << kCurveHeader << '\n'; }

void write_curve_row(std::ostream& out, const CurveRow& r) {
  out << r.iteration << ',' << r.env_steps << ',' << format_double(r.return_mean) << ','
      << format_double(r.return_std_over_seeds) << ',' << format_double(r.penalty_value) << ','
      << format_double(r.beta) << ',' << format_double(r.wall_time_s) << ',' << r.nonfinite_grad_count << '\n';
}

void write_curve_csv(const std::string& path, const std::vector<CurveRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_curve_header(out);
  for (const CurveRow& r : rows) write_curve_row(out, r);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<CurveRow> parse_curve_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw SchemaError("empty file");
  if (line != kCurveHeader) throw SchemaError("unexpected header '" + line + "'");
  std::vector<CurveRow> rows;
  std::size_t line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 8)
      throw SchemaError("line " + std::to_string(line_no) + ": expected 8 columns, got " +
                        std::to_string(cells.size()));
    CurveRow r;
    r.iteration = cell_count(cells[0], line_no);
    r.env_steps = cell_count(cells[1], line_no);
    r.return_mean = cell_real(cells[2], line_no);
    r.return_std_over_seeds = cell_real(cells[3], line_no);
    r.penalty_value = cell_real(cells[4], line_no);
    r.beta = cell_real(cells[5], line_no);
    r.wall_time_s = cell_real(cells[6], line_no);
    r.nonfinite_grad_count = cell_count(cells[7], line_no);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CurveRow> read_curve_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_csv(buf.str());
}

std::vector<CurveRow> aggregate_seeds(const std::vector<std::vector<CurveRow>>& runs) {
  if (runs.empty()) return {};
  const std::size_t n = runs.front().size();
  for (const auto& run : runs)
    if (run.size() != n) throw SchemaError("seed runs have different lengths");
  const double k = static_cast<double>(runs.size());
  std::vector<CurveRow> merged(n);
  for (std::size_t i = 0; i < n; ++i) {
    CurveRow& m = merged[i];
    m.iteration = runs.front()[i].iteration;
    m.env_steps = runs.front()[i].env_steps;
    for (const auto& run : runs) {
      const CurveRow& r = run[i];
      if (r.iteration != m.iteration) throw SchemaError("seed runs disagree on iteration numbering");
      m.return_mean += r.return_mean;
      m.penalty_value += r.penalty_value;
      m.beta += r.beta;
      m.wall_time_s += r.wall_time_s;
      m.nonfinite_grad_count += r.nonfinite_grad_count;
    }
    m.return_mean /= k;
    m.penalty_value /= k;
    m.beta /= k;
    m.wall_time_s /= k;
    double var = 0.0;
    for (const auto& run : runs) var += (run[i].return_mean - m.return_mean) * (run[i].return_mean - m.return_mean);
    m.return_std_over_seeds = std::sqrt(var / k);
  }
  return merged;
}

}  // namespace rllab::harness
