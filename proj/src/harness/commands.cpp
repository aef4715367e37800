#include "rllab/harness/commands.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "rllab/errors.hpp"
#include "rllab/harness/curve_csv.hpp"
#include "rllab/harness/diagnostics.hpp"
#include "rllab/harness/svg_plot.hpp"
#include "rllab/harness/verify.hpp"
#include "rllab/ppo/trainer.hpp"

namespace fs = std::filesystem;

namespace rllab::harness {

namespace {

std::string run_stem(const RunConfig& c) { return std::string(ppo::to_string(*c.algo)) + "_" + c.env; }

// Flag spelling for each config key; a few keys get shorter aliases.
std::string flag_names(const std::string& key) {
  static const std::map<std::string, std::string> aliases = {
      {"out_dir", "--out,--out-dir"}, {"beta_init", "--beta,--beta-init"}, {"batch_size", "--batch,--batch-size"}};
  if (auto it = aliases.find(key); it != aliases.end()) return it->second;
  std::string flag = "--" + key;
  for (char& c : flag)
    if (c == '_') c = '-';
  return flag;
}

struct TrainArgs {
  std::string config_path;
  std::size_t jobs = 0;
  std::map<std::string, std::string> overrides;
};

struct DiagArgs {
  double mu1 = 1.0, mu2 = 2.0, sigma_min = 0.01, sigma_max = 10.0;
  std::size_t grid = 50;
  std::string spacing = "log";
  std::string out = "asymmetry.csv";
};

struct PlotArgs {
  std::vector<std::string> inputs;
  std::string out;
};

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string fault;
  std::uint64_t seed = VerifyOptions{}.seed;
};

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    if (!args.config_path.empty()) config = load_config(args.config_path);
    if (const char* env_out = std::getenv("RL_LAB_OUT"); env_out && *env_out) config.out_dir = env_out;
    for (const auto& [key, value] : args.overrides) apply_setting(config, key, value);
    config.validate();
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const TrainOutputs outputs = run_training(config, args.jobs, out);
    out << "merged: " << outputs.merged_csv << '\n';
  } catch (const std::exception& e) {
    err << "error: training failed: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_diag(const DiagArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<AsymmetryCell> cells;
  try {
    require(args.spacing == "log" || args.spacing == "linear", "diag-asymmetry: spacing must be log|linear");
    cells = asymmetry_grid(args.mu1, args.mu2, args.sigma_min, args.sigma_max, args.grid,
                           args.spacing == "log" ? GridSpacing::kLog : GridSpacing::kLinear);
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    if (const fs::path parent = fs::path(args.out).parent_path(); !parent.empty()) fs::create_directories(parent);
    write_asymmetry_csv(args.out, cells);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  double max_diff = 0.0;
  for (const AsymmetryCell& c : cells) max_diff = std::max(max_diff, c.abs_difference);
  out << "wrote " << cells.size() << " cells to " << args.out << " (max |difference| " << max_diff << ")\n";
  return kExitOk;
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<CurveSeries> series;
  for (const std::string& path : args.inputs) {
    try {
      CurveSeries s{fs::path(path).stem().string(), read_curve_csv(path)};
      if (s.rows.empty()) {
        err << "error: " << path << " has no data rows\n";
        return kExitUsage;
      }
      series.push_back(std::move(s));
    } catch (const SchemaError& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  const std::string svg = render_svg(series);
  std::ofstream file(args.out, std::ios::binary);
  if (!(file << svg)) {
    err << "error: cannot write " << args.out << '\n';
    return kExitFailure;
  }
  out << "wrote " << args.out << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.seed = args.seed;
  if (!args.fault.empty()) {
    if (args.fault != "kl-sign") {
      err << "error: unknown fault '" << args.fault << "' (expected kl-sign)\n";
      return kExitUsage;
    }
    options.flip_kl_sign = true;
  }
  std::vector<std::string> names = args.suites.empty() ? suite_names() : args.suites;
  for (const std::string& name : names) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      err << "error: unknown suite '" << name << "'\n";
      return kExitUsage;
    }
  }
  std::vector<std::string> failed;
  out << std::left << std::setw(12) << "suite" << std::setw(7) << "result" << std::setw(13) << "checks"
      << std::setw(10) << "seconds" << "detail\n";
  for (const std::string& name : names) {
    SuiteResult r;
    try {
      r = run_suite(name, options);
    } catch (const std::exception& e) {
      r.name = name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out << std::left << std::setw(12) << r.name << std::setw(7) << (r.passed ? "PASS" : "FAIL") << std::setw(13)
        << (std::to_string(r.checks - r.failures) + "/" + std::to_string(r.checks)) << std::setw(10) << std::fixed
        << std::setprecision(2) << r.seconds << std::defaultfloat << r.detail << '\n';
    if (!r.passed) failed.push_back(r.name);
  }
  if (!failed.empty()) {
    out << "FAILED:";
    for (const std::string& f : failed) out << ' ' << f;
    out << '\n';
    return kExitFailure;
  }
  out << "all suites passed\n";
  return kExitOk;
}

}  // namespace

std::string seed_csv_path(const RunConfig& config, std::uint64_t seed) {
  return (fs::path(config.out_dir) / (run_stem(config) + "_seed" + std::to_string(seed) + ".csv")).string();
}

std::string merged_csv_path(const RunConfig& config) {
  return (fs::path(config.out_dir) / (run_stem(config) + "_merged.csv")).string();
}

TrainOutputs run_training(const RunConfig& config, std::size_t jobs, std::ostream& log) {
  config.validate();
  fs::create_directories(config.out_dir);
  TrainOutputs outputs;
  outputs.config_copy = (fs::path(config.out_dir) / (run_stem(config) + "_config.ini")).string();
  save_config(config, outputs.config_copy);

  const std::size_t n = config.seeds.size();
  std::vector<std::vector<CurveRow>> runs(n);
  std::vector<std::string> errors(n);
  for (std::uint64_t seed : config.seeds) outputs.seed_csvs.push_back(seed_csv_path(config, seed));

  ppo::PenaltyConfig penalty = config.penalty;
  penalty.variant = *config.algo;
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        std::ofstream csv(outputs.seed_csvs[i], std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write '" + outputs.seed_csvs[i] + "'");
        write_curve_header(csv);
        ppo::Trainer trainer(penalty, config.env, config.seeds[i]);
        trainer.train(config.iterations, [&](const ppo::IterationRecord& rec) {
          runs[i].push_back(to_row(rec, config.record_wall_time));
          write_curve_row(csv, runs[i].back());
          csv.flush();
        });
        std::lock_guard lock(log_mutex);
        log << "seed " << config.seeds[i] << ": final return_mean " << runs[i].back().return_mean << " -> "
            << outputs.seed_csvs[i] << '\n';
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t workers = std::min(n, jobs == 0 ? n : jobs);
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) throw std::runtime_error("seed " + std::to_string(config.seeds[i]) + ": " + errors[i]);

  outputs.merged_csv = merged_csv_path(config);
  write_curve_csv(outputs.merged_csv, aggregate_seeds(runs));
  return outputs;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Policy-optimization lab: PPO variants, KL asymmetry diagnostics and oracle checks", "rllab"};
  app.require_subcommand(1);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train one variant over one or more seeds");
  train_cmd->add_option("--config", train.config_path, "key = value configuration file");
  train_cmd->add_option("--jobs", train.jobs, "Parallel seed workers (default: one per seed)");
  for (const std::string& key : config_keys())
    train_cmd->add_option_function<std::string>(
        flag_names(key), [&train, key](const std::string& v) { train.overrides[key] = v; }, "Sets '" + key + "'");

  DiagArgs diag;
  CLI::App* diag_cmd = app.add_subcommand("diag-asymmetry", "Grid of Gaussian KL divergences in both directions");
  diag_cmd->add_option("--mu1", diag.mu1, "Mean of p")->capture_default_str();
  diag_cmd->add_option("--mu2", diag.mu2, "Mean of q")->capture_default_str();
  diag_cmd->add_option("--sigma-min", diag.sigma_min)->capture_default_str();
  diag_cmd->add_option("--sigma-max", diag.sigma_max)->capture_default_str();
  diag_cmd->add_option("--grid", diag.grid, "Points per sigma axis")->capture_default_str();
  diag_cmd->add_option("--spacing", diag.spacing, "log|linear")->capture_default_str();
  diag_cmd->add_option("--out", diag.out, "Output CSV")->capture_default_str();

  PlotArgs plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Render learning-curve CSVs to SVG");
  plot_cmd->add_option("csv", plot.inputs, "Curve CSV files")->required();
  plot_cmd->add_option("--out", plot.out, "Output SVG")->required();

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the oracle suites");
  verify_cmd->add_option("--suite", verify.suites, "Run only these suites (repeatable)");
  verify_cmd->add_option("--inject-fault", verify.fault, "kl-sign: negate the KL closed form in the kl suite");
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  if (train_cmd->parsed()) {
    if (train.config_path.empty() && !train.overrides.count("algo")) {
      err << "error: --algo is required (clip|kl|cim)\n\n" << train_cmd->help();
      return kExitUsage;
    }
    return cmd_train(train, out, err);
  }
  if (diag_cmd->parsed()) return cmd_diag(diag, out, err);
  if (plot_cmd->parsed()) return cmd_plot(plot, out, err);
  return cmd_verify(verify, out, err);
}

}  // namespace rllab::harness
