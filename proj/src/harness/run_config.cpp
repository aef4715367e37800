#include "rllab/harness/run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rllab/correntropy/kernel.hpp"
#include "rllab/envs/env.hpp"
#include "rllab/errors.hpp"

namespace rllab::harness {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return INFINITY;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  require(!t.empty() && end == t.c_str() + t.size() && errno == 0 && !std::isnan(v),
          "config: '" + key + "' expects a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  require(!t.empty() && t[0] != '-' && end == t.c_str() + t.size() && errno == 0,
          "config: '" + key + "' expects a nonnegative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ContractError("config: '" + key + "' expects true|false, got '" + text + "'");
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<T>(parse_count(key, item)));
  require(!out.empty(), "config: '" + key + "' expects a comma-separated list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "algo",        "env",         "seeds",          "iterations", "out_dir",      "record_wall_time",
      "epsilon",     "beta_init",   "d_targ",         "alpha",      "kernel",       "bandwidth",
      "sigma_mode",  "cim_draws",   "gamma",          "actor_lr",   "critic_lr",    "batch_size",
      "actor_steps", "critic_steps", "hidden",        "init_log_std", "value_scale"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  ppo::PenaltyConfig& p = c.penalty;
  if (key == "algo") c.algo = ppo::parse_variant(value);
  else if (key == "env") c.env = value;
  else if (key == "seeds") c.seeds = parse_list<std::uint64_t>(key, value);
  else if (key == "iterations") c.iterations = parse_count(key, value);
  else if (key == "out_dir") c.out_dir = value;
  else if (key == "record_wall_time") c.record_wall_time = parse_bool(key, value);
  else if (key == "epsilon") p.epsilon = parse_real(key, value);
  else if (key == "beta_init") p.beta_init = parse_real(key, value);
  else if (key == "d_targ") p.d_targ = parse_real(key, value);
  else if (key == "alpha") p.alpha = parse_real(key, value);
  else if (key == "kernel") p.kernel = corr::parse_kernel_family(value);
  else if (key == "bandwidth") p.bandwidth = parse_real(key, value);
  else if (key == "sigma_mode") p.sigma_mode = ppo::parse_sigma_mode(value);
  else if (key == "cim_draws") p.cim_draws = parse_count(key, value);
  else if (key == "gamma") p.gamma = parse_real(key, value);
  else if (key == "actor_lr") p.actor_lr = parse_real(key, value);
  else if (key == "critic_lr") p.critic_lr = parse_real(key, value);
  else if (key == "batch_size") p.batch_size = parse_count(key, value);
  else if (key == "actor_steps") p.actor_steps = parse_count(key, value);
  else if (key == "critic_steps") p.critic_steps = parse_count(key, value);
  else if (key == "hidden") p.hidden = parse_list<std::size_t>(key, value);
  else if (key == "init_log_std") p.init_log_std = parse_real(key, value);
  else if (key == "value_scale") p.value_scale = parse_real(key, value);
  else throw ContractError("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  require(algo.has_value(), "config: algo is required (clip|kl|cim)");
  const auto names = envs::environment_names();
  require(std::find(names.begin(), names.end(), env) != names.end(),
          "config: unknown env '" + env + "' (expected pendulum|pointmass)");
  require(!seeds.empty(), "config: at least one seed is required");
  require(iterations >= 1, "config: iterations must be at least 1");
  require(!out_dir.empty(), "config: out_dir must not be empty");
  try {
    penalty.validate();
  } catch (const ContractError& e) {
    throw ContractError(std::string("config: ") + e.what());
  }
}

bool operator==(const RunConfig& a, const RunConfig& b) { return format_config(a) == format_config(b); }

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(base, trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "config: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& c) {
  const ppo::PenaltyConfig& p = c.penalty;
  std::ostringstream out;
  if (c.algo) out << "algo = " << ppo::to_string(*c.algo) << '\n';
  out << "env = " << c.env << '\n'
      << "seeds = " << join(c.seeds) << '\n'
      << "iterations = " << c.iterations << '\n'
      << "out_dir = " << c.out_dir << '\n'
      << "record_wall_time = " << (c.record_wall_time ? "true" : "false") << '\n'
      << "epsilon = " << format_double(p.epsilon) << '\n'
      << "beta_init = " << format_double(p.beta_init) << '\n'
      << "d_targ = " << format_double(p.d_targ) << '\n'
      << "alpha = " << format_double(p.alpha) << '\n'
      << "kernel = " << corr::to_string(p.kernel) << '\n'
      << "bandwidth = " << format_double(p.bandwidth) << '\n'
      << "sigma_mode = " << ppo::to_string(p.sigma_mode) << '\n'
      << "cim_draws = " << p.cim_draws << '\n'
      << "gamma = " << format_double(p.gamma) << '\n'
      << "actor_lr = " << format_double(p.actor_lr) << '\n'
      << "critic_lr = " << format_double(p.critic_lr) << '\n'
      << "batch_size = " << p.batch_size << '\n'
      << "actor_steps = " << p.actor_steps << '\n'
      << "critic_steps = " << p.critic_steps << '\n'
      << "hidden = " << join(p.hidden) << '\n'
      << "init_log_std = " << format_double(p.init_log_std) << '\n'
      << "value_scale = " << format_double(p.value_scale) << '\n';
  return out.str();
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "config: cannot write '" + path + "'");
  out << format_config(config);
}

}  // namespace rllab::harness
