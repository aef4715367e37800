#include "rllab/harness/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rllab/autodiff/ops.hpp"
#include "rllab/correntropy/correntropy.hpp"
#include "rllab/envs/pointmass.hpp"
#include "rllab/oracles/oracles.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/ppo/surrogates.hpp"
#include "rllab/ppo/trainer.hpp"

namespace rllab::harness {

namespace {

using Rng = std::mt19937_64;
using policy::DiagGaussian;

struct GaussianPair {
  DiagGaussian p, q;
};

// mu in [-3, 3], sigma in [0.05, 5], dimension drawn from {1, 2, 4}.
std::vector<GaussianPair> random_pairs(std::size_t count, Rng& rng) {
  std::uniform_real_distribution<double> mu(-3.0, 3.0), sigma(0.05, 5.0);
  std::uniform_int_distribution<int> pick(0, 2);
  const std::size_t dims[] = {1, 2, 4};
  std::vector<GaussianPair> pairs;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = dims[pick(rng)];
    std::vector<double> mp(n), sp(n), mq(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      mp[i] = mu(rng);
      sp[i] = sigma(rng);
      mq[i] = mu(rng);
      sq[i] = sigma(rng);
    }
    pairs.push_back({DiagGaussian(mp, sp), DiagGaussian(mq, sq)});
  }
  return pairs;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check(SuiteResult& r, bool ok) {
  ++r.checks;
  if (!ok) {
    ++r.failures;
    r.passed = false;
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"kl",     "asymmetry", "cim",       "pinsker",
                                                 "taylor", "gradients", "controller"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "kl") return verify_kl(options);
  if (name == "asymmetry") return verify_asymmetry(options);
  if (name == "cim") return verify_cim(options);
  if (name == "pinsker") return verify_pinsker(options);
  if (name == "taylor") return verify_taylor(options);
  if (name == "gradients") return verify_gradients(options);
  if (name == "controller") return verify_controller(options);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

// 200 random pairs: 1-D against quadrature (1e-8), otherwise against a
// 1e6-sample Monte-Carlo estimate (3 standard errors).
SuiteResult verify_kl(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "kl";
  Rng rng(options.seed);
  const auto pairs = random_pairs(200, rng);
  const double sign = options.flip_kl_sign ? -1.0 : 1.0;
  double worst_quad = 0.0, worst_z = 0.0;
  std::size_t n1 = 0, nmc = 0;
  for (const auto& [p, q] : pairs) {
    const double kl = sign * policy::kl_closed_form(p, q);
    check(r, kl >= 0.0);
    if (p.dim() == 1) {
      ++n1;
      const double ref = oracles::kl_quadrature_1d(p.mean()[0], p.stddev()[0], q.mean()[0], q.stddev()[0]);
      const double err = std::abs(kl - ref);
      worst_quad = std::max(worst_quad, err);
      check(r, err <= 1e-8);
    } else {
      ++nmc;
      const auto mc = oracles::kl_monte_carlo(p.mean(), p.stddev(), q.mean(), q.stddev(), 1'000'000, rng);
      const double z = std::abs(kl - mc.mean) / mc.std_error;
      worst_z = std::max(worst_z, z);
      check(r, z <= 3.0);
    }
    check(r, sign * policy::kl_closed_form(p, p) == 0.0);
  }
  r.detail = std::to_string(n1) + " quadrature pairs (max abs err " + fmt(worst_quad) + "), " + std::to_string(nmc) +
             " Monte-Carlo pairs (max " + fmt(worst_z) + " SE)";
  r.seconds = timer.seconds();
  return r;
}

// Direct difference formula against forward - reverse on the same 200
// pairs, the equal-variance collapse, the variance-ratio term against the
// equal-mean asymmetry, and the mu1=1, mu2=2 grid magnitude.
SuiteResult verify_asymmetry(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "asymmetry";
  Rng rng(options.seed);
  const auto pairs = random_pairs(200, rng);
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    const policy::KlPair pair = policy::kl_asymmetry(p, q);
    const double direct = policy::asymmetry_difference(p, q);
    const double ref = policy::kl_closed_form(p, q) - policy::kl_closed_form(q, p);
    const double err = std::abs(direct - ref) / std::max(1.0, std::abs(ref));
    worst = std::max(worst, err);
    check(r, err <= 1e-9);
    check(r, pair.asymmetry == pair.forward - pair.reverse);

    const DiagGaussian same_sigma(q.mean(), p.stddev());
    check(r, policy::asymmetry_difference(p, same_sigma) == 0.0);

    std::vector<double> h(p.dim());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = p.stddev()[i] / q.stddev()[i];
    const DiagGaussian q_same_mean(p.mean(), q.stddev());
    const double beta = 0.7;
    const double bound = policy::ordering_lower_bound(h, beta, beta);
    const double expected = beta * policy::kl_asymmetry(q_same_mean, p).asymmetry;
    check(r, std::abs(bound - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
  }
  double max_diff = 0.0;
  const std::size_t grid = 200;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double s1 = 0.01 * std::pow(1000.0, static_cast<double>(i) / (grid - 1));
      const double s2 = 0.01 * std::pow(1000.0, static_cast<double>(j) / (grid - 1));
      max_diff = std::max(max_diff, std::abs(policy::kl_asymmetry(DiagGaussian({1.0}, {s1}), DiagGaussian({2.0}, {s2})).asymmetry));
    }
  }
  check(r, max_diff >= 1e4);
  r.detail = "max rel err " + fmt(worst) + ", grid max |difference| " + fmt(max_diff);
  r.seconds = timer.seconds();
  return r;
}

// Nonnegativity, symmetry and triangle inequality on 1000 random triples per positive-definite family; the
// rectangular kernel's triangle violations are counted and reported only.
SuiteResult verify_cim(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "cim";
  Rng rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> count(1, 16), dim(1, 3);
  std::uniform_real_distribution<double> scale(0.05, 3.0), bandwidth(0.2, 3.0);
  double worst_triangle = 0.0;
  std::size_t rect_violations = 0;
  for (corr::KernelFamily family : corr::kAllFamilies) {
    const bool asserted = family != corr::KernelFamily::kRectangular;
    for (int t = 0; t < 1000; ++t) {
      const corr::Kernel kernel(family, bandwidth(rng));
      const std::size_t n = count(rng), d = dim(rng);
      const double s = scale(rng);
      auto draw = [&] {
        std::vector<double> v(n * d);
        for (double& e : v) e = s * normal(rng);
        return ad::Tensor({n, d}, v);
      };
      const ad::Tensor xs = draw(), ys = draw(), zs = draw();
      const double xy = corr::cim(kernel, xs, ys), yz = corr::cim(kernel, ys, zs), xz = corr::cim(kernel, xs, zs);
      const double excess = xz - (xy + yz);
      if (!asserted) {
        if (excess > 1e-12) ++rect_violations;
        continue;
      }
      worst_triangle = std::max(worst_triangle, excess);
      check(r, xy >= 0.0 && yz >= 0.0 && xz >= 0.0);
      check(r, corr::cim(kernel, ys, xs) == xy);
      check(r, corr::cim(kernel, xs, xs) == 0.0);
      check(r, excess <= 1e-12);
      check(r, xz <= std::sqrt(kernel.peak()));
      // Strictly below 1 in exact arithmetic; rounds to 1 once every kernel value underflows.
      if (family == corr::KernelFamily::kGaussian) check(r, xz <= 1.0);
    }
  }
  r.detail = "worst triangle excess " + fmt(worst_triangle) + "; rectangular (reported only): " +
             std::to_string(rect_violations) + "/1000 triangle violations";
  r.seconds = timer.seconds();
  return r;
}

// tv^2 <= KL + 3/sqrt(N) on 100 random pairs; the 1-D TV values are also
// compared with a CDF-based oracle.
SuiteResult verify_pinsker(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "pinsker";
  Rng rng(options.seed + 1);
  const auto pairs = random_pairs(100, rng);
  const std::size_t samples = 100'000;
  double worst_tv = 0.0, tightest = INFINITY;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [p, q] = pairs[k];
    const policy::PinskerResult res = policy::pinsker_check(p, q, samples, options.seed + k);
    check(r, res.holds);
    tightest = std::min(tightest, res.kl + res.tolerance - res.tv_estimate * res.tv_estimate);
    if (p.dim() == 1) {
      const double ref = oracles::tv_from_cdf_1d(p.mean()[0], p.stddev()[0], q.mean()[0], q.stddev()[0]);
      worst_tv = std::max(worst_tv, std::abs(ref - res.tv_estimate));
      check(r, std::abs(ref - res.tv_estimate) <= 1e-8);
    }
  }
  r.detail = "min slack " + fmt(tightest) + ", max 1-D TV err " + fmt(worst_tv);
  r.seconds = timer.seconds();
  return r;
}

SuiteResult verify_taylor(const VerifyOptions&) {
  Timer timer;
  SuiteResult r;
  r.name = "taylor";
  double worst = 0.0;
  for (double sigma : {1.0, 0.3, 2.5}) {
    const corr::Kernel kernel(corr::KernelFamily::kGaussian, sigma);
    for (int i = 0; i < 50; ++i) {
      const double rr = 2.0 * sigma * i / 49.0;
      const double err = std::abs(corr::gaussian_taylor_partial_sum(rr, sigma, 20) - kernel.eval_radius(rr));
      worst = std::max(worst, err);
      check(r, err <= 1e-9);
    }
  }
  r.detail = "max err " + fmt(worst);
  r.seconds = timer.seconds();
  return r;
}

// Tape gradients of the three surrogates and of the CIM penalty against
// central differences on a fixed 8-transition batch, 20 parameter draws.
SuiteResult verify_gradients(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "gradients";
  Rng rng(options.seed);
  std::normal_distribution<double> normal;
  const std::size_t state_dim = 3, action_dim = 2, rows = 8;

  ppo::GaussianPolicy old_policy(state_dim, action_dim, {6}, -0.3);
  old_policy.initialize(rng);
  std::vector<double> states(rows * state_dim), actions(rows * action_dim), adv(rows), logp(rows);
  for (double& s : states) s = normal(rng);
  for (std::size_t i = 0; i < rows; ++i) {
    const DiagGaussian d = old_policy.distribution(std::span<const double>(states).subspan(i * state_dim, state_dim));
    std::vector<double> eps(action_dim);
    for (double& e : eps) e = normal(rng);
    const auto a = d.sample(eps);
    std::copy(a.begin(), a.end(), actions.begin() + static_cast<std::ptrdiff_t>(i * action_dim));
    logp[i] = d.log_prob(a);
    adv[i] = normal(rng);
  }
  ppo::PolicyBatch batch;
  batch.states = ad::Tensor({rows, state_dim}, states);
  batch.actions = ad::Tensor({rows, action_dim}, actions);
  batch.old_log_probs = ad::Tensor({rows, 1}, logp);
  batch.advantages = ad::Tensor({rows, 1}, adv);
  batch.old_mean = old_policy.mean_batch(batch.states);
  batch.old_log_std = old_policy.log_std_batch(rows);
  const corr::Kernel kernel(corr::KernelFamily::kGaussian, 1.0);

  using Objective = std::function<ad::Var(const policy::GaussianVars&, const ad::Tensor&)>;
  const std::vector<std::pair<std::string, Objective>> objectives = {
      {"clip", [&](const policy::GaussianVars& d, const ad::Tensor&) { return ppo::surrogate_clip(batch, d, 0.2); }},
      {"kl", [&](const policy::GaussianVars& d, const ad::Tensor&) { return ppo::surrogate_kl(batch, d, 0.5); }},
      {"cim",
       [&](const policy::GaussianVars& d, const ad::Tensor& noise) {
         return ppo::surrogate_cim(batch, d, 1.0, kernel, noise);
       }},
      {"cim_penalty",
       [&](const policy::GaussianVars& d, const ad::Tensor& noise) {
         return corr::cim_penalty(kernel, batch.old_mean, batch.old_log_std, d, noise);
       }},
  };

  std::vector<double> worst(objectives.size(), 0.0);
  for (int draw = 0; draw < 20; ++draw) {
    ppo::GaussianPolicy current = old_policy;
    for (ad::Tensor& p : current.parameters()) {
      std::vector<double> v = p.values();
      for (double& e : v) e += 0.15 * normal(rng);
      p = ad::Tensor(p.shape(), v);
    }
    std::vector<double> noise_v(rows * action_dim);
    for (double& e : noise_v) e = normal(rng);
    const ad::Tensor noise({rows, action_dim}, noise_v);

    for (std::size_t k = 0; k < objectives.size(); ++k) {
      const Objective& objective = objectives[k].second;
      auto value_at = [&](const std::vector<ad::Tensor>& params) {
        ppo::GaussianPolicy probe = current;
        probe.parameters() = params;
        ad::Tape tape;
        const auto vars = probe.bind(tape);
        return objective(probe.forward(tape, batch.states, vars), noise).value().item();
      };
      ad::Tape tape;
      const auto vars = current.bind(tape);
      const ad::Var out = objective(current.forward(tape, batch.states, vars), noise);
      tape.backward(out);
      std::vector<ad::Tensor> grads;
      for (ad::Var v : vars) grads.push_back(tape.gradient(v));
      const auto fd = oracles::finite_difference(value_at, current.parameters(), 1e-5);
      const double err = oracles::max_relative_error(grads, fd);
      worst[k] = std::max(worst[k], err);
      check(r, err <= 1e-3);
    }
  }
  std::ostringstream detail;
  detail << "max rel err";
  for (std::size_t k = 0; k < objectives.size(); ++k) detail << ' ' << objectives[k].first << '=' << fmt(worst[k]);
  r.detail = detail.str();
  r.seconds = timer.seconds();
  return r;
}

// Both branches and the dead zone with d_targ = 0.1, beta0 = 0.5, then the
// beta sequence of a short adaptive-KL run replayed against the rule.
SuiteResult verify_controller(const VerifyOptions& options) {
  Timer timer;
  SuiteResult r;
  r.name = "controller";
  const double d_targ = 0.1, beta0 = 0.5;
  check(r, ppo::adaptive_beta_update(beta0, 0.05, d_targ) == 0.25);
  check(r, ppo::adaptive_beta_update(beta0, 0.2, d_targ) == 1.0);
  check(r, ppo::adaptive_beta_update(beta0, 0.1, d_targ) == 0.5);
  check(r, ppo::adaptive_beta_update(beta0, d_targ / 1.5, d_targ) == beta0);
  check(r, ppo::adaptive_beta_update(beta0, d_targ * 1.5, d_targ) == beta0);
  check(r, ppo::adaptive_beta_update(beta0, std::nextafter(d_targ / 1.5, 0.0), d_targ) == beta0 / 2);
  check(r, ppo::adaptive_beta_update(beta0, std::nextafter(d_targ * 1.5, 1.0), d_targ) == beta0 * 2);
  check(r, ppo::adaptive_beta_update(ppo::adaptive_beta_update(beta0, 0.1, d_targ), 0.1, d_targ) == beta0);

  ppo::PenaltyConfig config;
  config.variant = ppo::Variant::kAdaptiveKl;
  config.actor_lr = 3e-3;
  ppo::Trainer trainer(config, "pointmass", options.seed);
  double beta = config.beta_init;
  std::size_t halvings = 0, doublings = 0;
  for (int i = 0; i < 30; ++i) {
    const ppo::IterationRecord rec = trainer.iterate();
    const double expected = ppo::adaptive_beta_update(beta, rec.penalty_value, d_targ);
    if (expected < beta) ++halvings;
    if (expected > beta) ++doublings;
    check(r, rec.beta == expected);
    beta = expected;
  }
  r.detail = "30-iteration replay: " + std::to_string(halvings) + " halvings, " + std::to_string(doublings) +
             " doublings";
  r.seconds = timer.seconds();
  return r;
}

}  // namespace rllab::harness
