#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rllab/autodiff/ops.hpp"
#include "rllab/envs/pointmass.hpp"
#include "rllab/errors.hpp"
#include "rllab/oracles/oracles.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/ppo/config.hpp"
#include "rllab/ppo/policy_net.hpp"
#include "rllab/ppo/surrogates.hpp"
#include "rllab/ppo/trainer.hpp"

namespace ad = rllab::ad;
namespace ppo = rllab::ppo;
namespace corr = rllab::corr;
namespace oracles = rllab::oracles;
using rllab::policy::DiagGaussian;

namespace {

// One-state, one-dimensional batch whose behavior log-prob makes rho equal
// `ratio` for the new policy N(new_mean, 1) at action 0.
ppo::PolicyBatch scalar_batch(double new_mean, double ratio, double advantage, double old_mean = 0.0) {
  ppo::PolicyBatch b;
  b.states = ad::Tensor::matrix(1, 1, {0.0});
  b.actions = ad::Tensor::matrix(1, 1, {0.0});
  const double log_new = DiagGaussian({new_mean}, {1.0}).log_prob(std::vector<double>{0.0});
  b.old_log_probs = ad::Tensor::matrix(1, 1, {log_new - std::log(ratio)});
  b.advantages = ad::Tensor::matrix(1, 1, {advantage});
  b.old_mean = ad::Tensor::matrix(1, 1, {old_mean});
  b.old_log_std = ad::Tensor::matrix(1, 1, {0.0});
  return b;
}

rllab::Trajectory random_trajectory(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  rllab::Trajectory t;
  t.state_dim = 2;
  t.action_dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    t.states.push_back(normal(rng));
    t.states.push_back(normal(rng));
    t.actions.push_back(normal(rng));
    t.rewards.push_back(-std::abs(normal(rng)));
    t.log_probs.push_back(-1.0 + 0.1 * normal(rng));
    t.dones.push_back(i + 1 == n);
  }
  t.final_state = {0.0, 0.0};
  return t;
}

struct Fixture {
  ppo::GaussianPolicy policy{2, 1, {4}, -0.3};
  ppo::PolicyBatch batch;
  Fixture() {
    std::mt19937_64 rng(21);
    policy.initialize(rng);
    // Move the mean head away from the tiny initial scale.
    for (auto& p : policy.parameters())
      for (double& v : p.data()) v += 0.2 * std::normal_distribution<double>()(rng);
    ad::Mlp critic({2, 3, 1});
    critic.initialize(rng);
    auto traj = ppo::compute_advantages(random_trajectory(8, rng), critic, 0.9);
    ppo::GaussianPolicy behavior = policy;
    for (auto& p : behavior.parameters())
      for (double& v : p.data()) v += 0.05 * std::normal_distribution<double>()(rng);
    for (std::size_t t = 0; t < traj.size(); ++t)
      traj.log_probs[t] = behavior.distribution(traj.state(t)).log_prob(traj.action(t));
    batch = ppo::make_batch(traj, behavior);
  }
};

}  // namespace

TEST(Advantages, ReturnsToGoByHand) {
  rllab::Trajectory t;
  t.state_dim = 1;
  t.action_dim = 1;
  t.states = {0.0, 0.0, 0.0};
  t.actions = {0.0, 0.0, 0.0};
  t.rewards = {1.0, 1.0, 1.0};
  t.log_probs = {0.0, 0.0, 0.0};
  t.dones = {false, false, true};
  const ad::Mlp zero({1, 2, 1});
  const auto out = ppo::compute_advantages(t, zero, 0.9, false);
  EXPECT_NEAR(out.returns[0], 2.71, 1e-15);
  EXPECT_NEAR(out.returns[1], 1.9, 1e-15);
  EXPECT_EQ(out.returns[2], 1.0);
  EXPECT_EQ(out.advantages, out.returns);
}

TEST(Advantages, ResetAtDoneAndBootstrapAtCut) {
  rllab::Trajectory t;
  t.state_dim = 1;
  t.action_dim = 1;
  t.states = {0.0, 0.0, 0.0};
  t.actions = {0.0, 0.0, 0.0};
  t.rewards = {1.0, 2.0, 3.0};
  t.log_probs = {0.0, 0.0, 0.0};
  t.dones = {true, false, false};
  t.final_state = {1.0};
  ad::Mlp critic({1, 1});
  critic.parameters()[0] = ad::Tensor::matrix(1, 1, {2.0});
  critic.parameters()[1] = ad::Tensor::matrix(1, 1, {0.5});
  // V(final) = 2.5, scaled by 2 -> 5.
  const auto out = ppo::compute_advantages(t, critic, 0.5, false, 2.0);
  EXPECT_EQ(out.returns[0], 1.0);
  EXPECT_DOUBLE_EQ(out.returns[2], 3.0 + 0.5 * 5.0);
  EXPECT_DOUBLE_EQ(out.returns[1], 2.0 + 0.5 * out.returns[2]);
  EXPECT_DOUBLE_EQ(out.values[0], 1.0);
  EXPECT_DOUBLE_EQ(out.advantages[1], out.returns[1] - 1.0);
}

TEST(Advantages, ZeroRewardsZeroCriticAndNormalization) {
  std::mt19937_64 rng(1);
  auto t = random_trajectory(6, rng);
  std::fill(t.rewards.begin(), t.rewards.end(), 0.0);
  const ad::Mlp zero({2, 3, 1});
  for (double a : ppo::compute_advantages(t, zero, 0.9, false).advantages) EXPECT_EQ(a, 0.0);
  for (double a : ppo::compute_advantages(t, zero, 0.9, true).advantages) EXPECT_EQ(a, 0.0);

  auto n = ppo::compute_advantages(random_trajectory(50, rng), zero, 0.9, true);
  double mean = 0, var = 0;
  for (double a : n.advantages) mean += a;
  mean /= 50;
  for (double a : n.advantages) var += (a - mean) * (a - mean);
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var / 50, 1.0, 1e-12);
  EXPECT_THROW(ppo::compute_advantages(rllab::Trajectory{}, zero, 0.9), rllab::ContractError);
}

namespace {

// Evaluates `objective` with the new policy N(mean, exp(log_std)) on a fresh tape.
template <class F>
double with_new_policy(double mean, double log_std, F objective) {
  ad::Tape tape;
  const rllab::policy::GaussianVars dist{tape.parameter(ad::Tensor::matrix(1, 1, {mean})),
                                         tape.parameter(ad::Tensor::matrix(1, 1, {log_std}))};
  return objective(dist).value().item();
}

}  // namespace

TEST(Surrogates, ClipExamples) {
  auto clip = [](double ratio, double adv) {
    const auto b = scalar_batch(0.0, ratio, adv);
    return with_new_policy(0.0, 0.0, [&](const auto& d) { return ppo::surrogate_clip(b, d, 0.2); });
  };
  EXPECT_NEAR(clip(1.3, 1.0), 1.2, 1e-12);
  EXPECT_NEAR(clip(0.5, -1.0), -0.8, 1e-12);
  EXPECT_NEAR(clip(1.0, 0.7), 0.7, 1e-12);
  // Inside the band the clip is inactive and epsilon does not matter.
  const auto b = scalar_batch(0.0, 1.05, 2.0);
  for (double eps : {0.1, 0.2, 0.5, double(INFINITY)})
    EXPECT_NEAR(with_new_policy(0.0, 0.0, [&](const auto& d) { return ppo::surrogate_clip(b, d, eps); }), 2.1, 1e-12);
}

TEST(Surrogates, KlExample) {
  const auto b = scalar_batch(1.0, 1.0, 0.0);
  EXPECT_NEAR(with_new_policy(1.0, 0.0, [&](const auto& d) { return ppo::surrogate_kl(b, d, 0.5); }), -0.25, 1e-12);
  const auto b2 = scalar_batch(1.0, 1.4, 1.0);
  EXPECT_NEAR(with_new_policy(1.0, 0.0, [&](const auto& d) { return ppo::surrogate_kl(b2, d, 0.0); }), 1.4, 1e-12);
}

TEST(Surrogates, CimExample) {
  const auto b = scalar_batch(1.0, 1.0, 0.0);
  const corr::Kernel k(corr::KernelFamily::kGaussian, 1.0);
  const ad::Tensor noise = ad::Tensor::matrix(1, 1, {0.37});
  EXPECT_NEAR(with_new_policy(1.0, 0.0, [&](const auto& d) { return ppo::surrogate_cim(b, d, 1.0, k, noise); }),
              -std::sqrt(1 - std::exp(-0.5)), 1e-12);
  EXPECT_NEAR(with_new_policy(1.0, 0.0, [&](const auto& d) { return ppo::surrogate_cim(b, d, 1.0, k, noise); }),
              -0.627271, 1e-6);
  EXPECT_EQ(with_new_policy(1.0, 0.0, [&](const auto& d) { return ppo::surrogate_cim(b, d, 0.0, k, noise); }), 0.0);
}

TEST(Surrogates, AllEqualMeanAdvantageWhenPolicyUnchanged) {
  Fixture f;
  ppo::GaussianPolicy& old = f.policy;
  // Rebuild the batch against the policy itself so rho == 1.
  std::mt19937_64 rng(3);
  ad::Mlp critic({2, 3, 1});
  critic.initialize(rng);
  auto traj = ppo::compute_advantages(random_trajectory(8, rng), critic, 0.9);
  for (std::size_t t = 0; t < traj.size(); ++t) traj.log_probs[t] = old.distribution(traj.state(t)).log_prob(traj.action(t));
  const auto batch = ppo::make_batch(traj, old);
  double mean_adv = 0.0;
  for (double a : traj.advantages) mean_adv += a;
  mean_adv /= 8;

  ad::Tape tape;
  const auto vars = old.bind(tape);
  const auto dist = old.forward(tape, batch.states, vars);
  const ad::Tensor ratio = ppo::importance_ratio(batch, dist).value();
  for (double r : ratio.values()) EXPECT_NEAR(r, 1.0, 1e-12);
  const corr::Kernel k(corr::KernelFamily::kGaussian, 1.0);
  const ad::Tensor noise = ad::Tensor::filled({8, 1}, 0.3);
  EXPECT_NEAR(ppo::surrogate_clip(batch, dist, 0.2).value().item(), mean_adv, 1e-12);
  EXPECT_NEAR(ppo::surrogate_kl(batch, dist, 3.0).value().item(), mean_adv, 1e-12);
  EXPECT_NEAR(ppo::surrogate_cim(batch, dist, 3.0, k, noise).value().item(), mean_adv, 1e-12);
}

TEST(Surrogates, GradientsMatchFiniteDifferences) {
  Fixture f;
  const corr::Kernel k(corr::KernelFamily::kGaussian, 1.0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  std::vector<double> nv(8);
  for (double& e : nv) e = normal(rng);
  const ad::Tensor noise({8, 1}, nv);

  using Objective = std::function<ad::Var(const rllab::policy::GaussianVars&)>;
  const std::vector<std::pair<const char*, Objective>> objectives = {
      {"clip", [&](const auto& d) { return ppo::surrogate_clip(f.batch, d, 0.2); }},
      {"kl", [&](const auto& d) { return ppo::surrogate_kl(f.batch, d, 0.7); }},
      {"cim", [&](const auto& d) { return ppo::surrogate_cim(f.batch, d, 1.3, k, noise); }},
  };
  for (const auto& [name, objective] : objectives) {
    auto value = [&](const std::vector<ad::Tensor>& params) {
      ppo::GaussianPolicy p = f.policy;
      p.parameters() = params;
      ad::Tape tape;
      const auto vars = p.bind(tape);
      return objective(p.forward(tape, f.batch.states, vars)).value().item();
    };
    ad::Tape tape;
    const auto vars = f.policy.bind(tape);
    tape.backward(objective(f.policy.forward(tape, f.batch.states, vars)));
    std::vector<ad::Tensor> grads;
    for (ad::Var v : vars) grads.push_back(tape.gradient(v));
    const auto fd = oracles::finite_difference(value, f.policy.parameters());
    EXPECT_LT(oracles::max_relative_error(grads, fd), 1e-3) << name;
  }
}

TEST(BetaController, Examples) {
  EXPECT_EQ(ppo::adaptive_beta_update(0.5, 0.05, 0.1), 0.25);
  EXPECT_EQ(ppo::adaptive_beta_update(0.5, 0.2, 0.1), 1.0);
  EXPECT_EQ(ppo::adaptive_beta_update(0.5, 0.1, 0.1), 0.5);
  EXPECT_EQ(ppo::adaptive_beta_update(0.5, 0.1 / 1.5, 0.1), 0.5);
  EXPECT_EQ(ppo::adaptive_beta_update(0.5, 0.15, 0.1), 0.5);
  EXPECT_EQ(ppo::adaptive_beta_update(ppo::adaptive_beta_update(0.5, 0.12, 0.1), 0.12, 0.1), 0.5);
  EXPECT_GT(ppo::adaptive_beta_update(1e-300, 0.0, 0.1), 0.0);
  EXPECT_THROW(ppo::adaptive_beta_update(-1.0, 0.1, 0.1), rllab::ContractError);
  EXPECT_THROW(ppo::adaptive_beta_update(0.5, 0.1, 0.0), rllab::ContractError);
}

TEST(Config, DefaultsAndValidation) {
  ppo::PenaltyConfig c;
  EXPECT_EQ(c.epsilon, 0.2);
  EXPECT_EQ(c.beta_init, 0.5);
  EXPECT_EQ(c.d_targ, 0.1);
  EXPECT_EQ(c.alpha, 1.0);
  EXPECT_EQ(c.gamma, 0.9);
  EXPECT_EQ(c.actor_lr, 1e-4);
  EXPECT_EQ(c.critic_lr, 2e-4);
  EXPECT_EQ(c.batch_size, 32u);
  EXPECT_EQ(c.actor_steps, 10u);
  EXPECT_EQ(c.critic_steps, 10u);
  EXPECT_NO_THROW(c.validate());
  c.epsilon = INFINITY;
  c.alpha = 0.0;
  c.beta_init = 0.0;
  EXPECT_NO_THROW(c.validate());
  for (auto mutate : std::vector<std::function<void(ppo::PenaltyConfig&)>>{
           [](auto& x) { x.epsilon = -0.1; }, [](auto& x) { x.gamma = 1.5; }, [](auto& x) { x.batch_size = 0; },
           [](auto& x) { x.actor_lr = 0.0; }, [](auto& x) { x.bandwidth = 0.0; }, [](auto& x) { x.d_targ = NAN; },
           [](auto& x) { x.cim_draws = 0; }, [](auto& x) { x.value_scale = 0.0; }}) {
    ppo::PenaltyConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.validate(), rllab::ContractError);
  }
  EXPECT_EQ(ppo::parse_variant("kl"), ppo::Variant::kAdaptiveKl);
  EXPECT_EQ(ppo::to_string(ppo::Variant::kCim), "cim");
  EXPECT_THROW(ppo::parse_variant("trpo"), rllab::ContractError);
  EXPECT_EQ(ppo::parse_sigma_mode("silverman"), ppo::SigmaMode::kSilverman);
}

TEST(Trainer, FirstActorStepHasUnitRatio) {
  for (auto variant : {ppo::Variant::kClip, ppo::Variant::kAdaptiveKl, ppo::Variant::kCim}) {
    ppo::PenaltyConfig c;
    c.variant = variant;
    c.hidden = {8};
    ppo::Trainer trainer(c, "pendulum", 1);
    const ppo::GaussianPolicy before = trainer.policy();
    trainer.iterate();
    const auto& batch = *trainer.last_batch();
    ad::Tape tape;
    const auto vars = before.bind(tape);
    for (double r : ppo::importance_ratio(batch, before.forward(tape, batch.states, vars)).value().values())
      EXPECT_NEAR(r, 1.0, 1e-12);
  }
}

TEST(Trainer, OneIterationChangesParameters) {
  ppo::PenaltyConfig c;
  c.hidden = {8};
  const auto log = ppo::train(c, "pendulum", 0, 1);
  ASSERT_EQ(log.records.size(), 1u);
  EXPECT_EQ(log.records[0].env_steps, 32u);
  EXPECT_EQ(log.records[0].iteration, 0u);
  ppo::Trainer fresh(c, "pendulum", 0);
  const auto before = fresh.policy().parameters();
  fresh.iterate();
  EXPECT_NE(fresh.policy().parameters(), before);
  EXPECT_THROW(ppo::train(c, "pendulum", 0, 0), rllab::ContractError);
}

TEST(Trainer, ZeroRewardClipLeavesActorUnchanged) {
  rllab::envs::PointMassParams p;
  p.reward_scale = 0.0;
  ppo::PenaltyConfig c;
  c.hidden = {8};
  ppo::Trainer trainer(c, std::make_unique<rllab::envs::PointMass>(p), 5);
  for (auto& t : trainer.critic().parameters()) t = ad::Tensor::zeros(t.shape());
  const auto before = trainer.policy().parameters();
  for (int i = 0; i < 3; ++i) {
    const auto rec = trainer.iterate();
    EXPECT_EQ(rec.nonfinite_grad_count, 0u);
    for (double a : trainer.last_batch()->advantages.values()) EXPECT_EQ(a, 0.0);
  }
  EXPECT_EQ(trainer.policy().parameters(), before);
}

TEST(Trainer, KlControllerRecordsBeta) {
  ppo::PenaltyConfig c;
  c.variant = ppo::Variant::kAdaptiveKl;
  c.hidden = {8};
  ppo::Trainer trainer(c, "pointmass", 2);
  double beta = c.beta_init;
  for (int i = 0; i < 5; ++i) {
    const auto rec = trainer.iterate();
    EXPECT_EQ(rec.beta, ppo::adaptive_beta_update(beta, rec.penalty_value, c.d_targ));
    beta = rec.beta;
  }
}

TEST(Trainer, DeterministicForFixedSeed) {
  for (auto variant : {ppo::Variant::kClip, ppo::Variant::kAdaptiveKl, ppo::Variant::kCim}) {
    ppo::PenaltyConfig c;
    c.variant = variant;
    c.hidden = {8};
    c.sigma_mode = ppo::SigmaMode::kSilverman;
    const auto a = ppo::train(c, "pointmass", 7, 5);
    const auto b = ppo::train(c, "pointmass", 7, 5);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      EXPECT_EQ(a.records[i].return_mean, b.records[i].return_mean);
      EXPECT_EQ(a.records[i].penalty_value, b.records[i].penalty_value);
      EXPECT_EQ(a.records[i].actor_loss, b.records[i].actor_loss);
      EXPECT_EQ(a.records[i].critic_loss, b.records[i].critic_loss);
    }
    const auto c2 = ppo::train(c, "pointmass", 8, 5);
    EXPECT_NE(a.records.back().actor_loss, c2.records.back().actor_loss);
  }
}

TEST(Trainer, MultiDrawCimRuns) {
  ppo::PenaltyConfig c;
  c.variant = ppo::Variant::kCim;
  c.cim_draws = 4;
  c.hidden = {8};
  const auto log = ppo::train(c, "pendulum", 0, 3);
  for (const auto& r : log.records) {
    EXPECT_TRUE(std::isfinite(r.penalty_value));
    EXPECT_GE(r.penalty_value, 0.0);
  }
}

TEST(Evaluate, AveragesFullEpisodes) {
  ppo::GaussianPolicy p(3, 1, {4});
  std::mt19937_64 rng(0);
  p.initialize(rng);
  const double a = ppo::evaluate_policy(p, "pendulum", 3, 1), b = ppo::evaluate_policy(p, "pendulum", 3, 1);
  EXPECT_EQ(a, b);
  EXPECT_LE(a, 0.0);
  EXPECT_GE(a, -200 * 16.3);
}
