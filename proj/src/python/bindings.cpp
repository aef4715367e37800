#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rllab/correntropy/correntropy.hpp"
#include "rllab/envs/pendulum.hpp"
#include "rllab/envs/pointmass.hpp"
#include "rllab/errors.hpp"
#include "rllab/harness/commands.hpp"
#include "rllab/harness/diagnostics.hpp"
#include "rllab/harness/verify.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/ppo/surrogates.hpp"
#include "rllab/ppo/trainer.hpp"

namespace py = pybind11;
using namespace rllab;

namespace {

// Rows of equal length -> (n, d) tensor; a flat list is one column.
ad::Tensor to_tensor(const std::vector<std::vector<double>>& rows) {
  require(!rows.empty(), "sample set is empty");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    require(r.size() == d, "rows have different lengths");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ad::Tensor({rows.size(), d}, flat);
}

py::dict record_dict(const ppo::IterationRecord& r) {
  py::dict d;
  d["iteration"] = r.iteration;
  d["return_mean"] = r.return_mean;
  d["episodes_finished"] = r.episodes_finished;
  d["penalty_value"] = r.penalty_value;
  d["beta"] = r.beta;
  d["actor_loss"] = r.actor_loss;
  d["critic_loss"] = r.critic_loss;
  d["env_steps"] = r.env_steps;
  d["wall_seconds"] = r.wall_seconds;
  d["nonfinite_grad_count"] = r.nonfinite_grad_count;
  d["kernel_bandwidth"] = r.kernel_bandwidth;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PPO variants, Gaussian KL diagnostics and correntropy metrics";
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);

  py::class_<policy::DiagGaussian>(m, "DiagGaussian")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("mean"), py::arg("stddev"))
      .def_property_readonly("mean", &policy::DiagGaussian::mean)
      .def_property_readonly("stddev", &policy::DiagGaussian::stddev)
      .def("log_prob", [](const policy::DiagGaussian& d, const std::vector<double>& a) { return d.log_prob(a); })
      .def("sample", [](const policy::DiagGaussian& d, const std::vector<double>& e) { return d.sample(e); });

  m.def("kl_closed_form", &policy::kl_closed_form, py::arg("p"), py::arg("q"));
  m.def(
      "kl_asymmetry",
      [](const policy::DiagGaussian& p, const policy::DiagGaussian& q) {
        const auto r = policy::kl_asymmetry(p, q);
        return py::make_tuple(r.forward, r.reverse, r.asymmetry);
      },
      py::arg("p"), py::arg("q"), "(KL(p||q), KL(q||p), difference)");
  m.def("asymmetry_difference", &policy::asymmetry_difference, py::arg("p"), py::arg("q"));
  m.def("total_variation_1d", &policy::total_variation_1d, py::arg("p"), py::arg("q"));
  m.def(
      "pinsker_check",
      [](const policy::DiagGaussian& p, const policy::DiagGaussian& q, std::size_t samples, std::uint64_t seed) {
        const auto r = policy::pinsker_check(p, q, samples, seed);
        py::dict d;
        d["tv"] = r.tv_estimate;
        d["kl"] = r.kl;
        d["tolerance"] = r.tolerance;
        d["holds"] = r.holds;
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("samples") = 100000, py::arg("seed") = 0);

  py::class_<corr::Kernel>(m, "Kernel")
      .def(py::init([](const std::string& family, double bandwidth) {
             return corr::Kernel(corr::parse_kernel_family(family), bandwidth);
           }),
           py::arg("family"), py::arg("bandwidth"))
      .def_property_readonly("family", [](const corr::Kernel& k) { return std::string(corr::to_string(k.family())); })
      .def_property_readonly("bandwidth", &corr::Kernel::bandwidth)
      .def("peak", &corr::Kernel::peak)
      .def("eval", [](const corr::Kernel& k, const std::vector<double>& diff) { return k.eval(diff); });

  m.def(
      "correntropy",
      [](const corr::Kernel& k, const std::vector<std::vector<double>>& xs, const std::vector<std::vector<double>>& ys) {
        return corr::correntropy(k, to_tensor(xs), to_tensor(ys)).value;
      },
      py::arg("kernel"), py::arg("xs"), py::arg("ys"));
  m.def(
      "cim",
      [](const corr::Kernel& k, const std::vector<std::vector<double>>& xs, const std::vector<std::vector<double>>& ys) {
        return corr::cim(k, to_tensor(xs), to_tensor(ys));
      },
      py::arg("kernel"), py::arg("xs"), py::arg("ys"));
  m.def(
      "silverman_bandwidth", [](const std::vector<double>& s) { return corr::silverman_bandwidth(s); },
      py::arg("samples"));
  m.def("gaussian_taylor_partial_sum", &corr::gaussian_taylor_partial_sum, py::arg("r"), py::arg("sigma_k"),
        py::arg("terms"));

  m.def(
      "pendulum_step",
      [](double theta, double theta_dot, double torque) {
        const auto t = envs::pendulum_dynamics({theta, theta_dot}, torque);
        return py::make_tuple(t.next.theta, t.next.theta_dot, t.reward);
      },
      py::arg("theta"), py::arg("theta_dot"), py::arg("torque"), "(theta', theta_dot', reward)");
  m.def(
      "pointmass_step",
      [](double x, double v, double force) {
        const auto t = envs::pointmass_dynamics({x, v}, force);
        return py::make_tuple(t.next.x, t.next.v, t.reward);
      },
      py::arg("x"), py::arg("v"), py::arg("force"), "(x', v', reward)");

  m.def("adaptive_beta_update", &ppo::adaptive_beta_update, py::arg("beta"), py::arg("measured_kl"),
        py::arg("d_targ"));

  py::class_<ppo::PenaltyConfig>(m, "PenaltyConfig")
      .def(py::init<>())
      .def_property(
          "variant", [](const ppo::PenaltyConfig& c) { return std::string(ppo::to_string(c.variant)); },
          [](ppo::PenaltyConfig& c, const std::string& v) { c.variant = ppo::parse_variant(v); })
      .def_property(
          "kernel", [](const ppo::PenaltyConfig& c) { return std::string(corr::to_string(c.kernel)); },
          [](ppo::PenaltyConfig& c, const std::string& v) { c.kernel = corr::parse_kernel_family(v); })
      .def_property(
          "sigma_mode", [](const ppo::PenaltyConfig& c) { return std::string(ppo::to_string(c.sigma_mode)); },
          [](ppo::PenaltyConfig& c, const std::string& v) { c.sigma_mode = ppo::parse_sigma_mode(v); })
      .def_readwrite("epsilon", &ppo::PenaltyConfig::epsilon)
      .def_readwrite("beta_init", &ppo::PenaltyConfig::beta_init)
      .def_readwrite("d_targ", &ppo::PenaltyConfig::d_targ)
      .def_readwrite("alpha", &ppo::PenaltyConfig::alpha)
      .def_readwrite("bandwidth", &ppo::PenaltyConfig::bandwidth)
      .def_readwrite("cim_draws", &ppo::PenaltyConfig::cim_draws)
      .def_readwrite("gamma", &ppo::PenaltyConfig::gamma)
      .def_readwrite("actor_lr", &ppo::PenaltyConfig::actor_lr)
      .def_readwrite("critic_lr", &ppo::PenaltyConfig::critic_lr)
      .def_readwrite("batch_size", &ppo::PenaltyConfig::batch_size)
      .def_readwrite("actor_steps", &ppo::PenaltyConfig::actor_steps)
      .def_readwrite("critic_steps", &ppo::PenaltyConfig::critic_steps)
      .def_readwrite("hidden", &ppo::PenaltyConfig::hidden)
      .def_readwrite("value_scale", &ppo::PenaltyConfig::value_scale)
      .def_readwrite("init_log_std", &ppo::PenaltyConfig::init_log_std)
      .def("validate", &ppo::PenaltyConfig::validate);

  m.def(
      "train",
      [](const ppo::PenaltyConfig& config, const std::string& env, std::uint64_t seed, std::size_t iterations) {
        ppo::RunLog log;
        {
          py::gil_scoped_release release;
          log = ppo::train(config, env, seed, iterations);
        }
        py::list records;
        for (const auto& r : log.records) records.append(record_dict(r));
        return records;
      },
      py::arg("config"), py::arg("env"), py::arg("seed"), py::arg("iterations"),
      "Runs one training run and returns one dict per iteration.");

  m.def(
      "asymmetry_grid",
      [](double mu1, double mu2, double sigma_min, double sigma_max, std::size_t grid, const std::string& spacing) {
        require(spacing == "log" || spacing == "linear", "spacing must be log|linear");
        py::list out;
        for (const auto& c : harness::asymmetry_grid(mu1, mu2, sigma_min, sigma_max, grid,
                                                     spacing == "log" ? harness::GridSpacing::kLog
                                                                      : harness::GridSpacing::kLinear))
          out.append(py::make_tuple(c.sigma1, c.sigma2, c.kl_pq, c.kl_qp, c.abs_difference));
        return out;
      },
      py::arg("mu1") = 1.0, py::arg("mu2") = 2.0, py::arg("sigma_min") = 0.01, py::arg("sigma_max") = 10.0,
      py::arg("grid") = 50, py::arg("spacing") = "log");

  m.def(
      "run_suite",
      [](const std::string& name) {
        const auto r = harness::run_suite(name);
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["checks"] = r.checks;
        d["failures"] = r.failures;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("name"));
  m.def("suite_names", &harness::suite_names);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"rllab"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = harness::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
