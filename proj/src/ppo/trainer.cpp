#include "rllab/ppo/trainer.hpp"

#include <chrono>
#include <cmath>

#include "rllab/autodiff/ops.hpp"
#include "rllab/correntropy/correntropy.hpp"
#include "rllab/errors.hpp"

namespace rllab::ppo {

namespace {

// Independent generator per purpose, all derived from the run seed.
envs::Rng make_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return envs::Rng(seq);
}

PolicyFn as_policy_fn(const GaussianPolicy& policy) {
  return [&policy](std::span<const double> state) { return policy.distribution(state); };
}

std::vector<ad::Tensor> gradients_of(const ad::Tape& tape, const std::vector<ad::Var>& vars) {
  std::vector<ad::Tensor> grads;
  grads.reserve(vars.size());
  for (ad::Var v : vars) grads.push_back(tape.gradient(v));
  return grads;
}

ad::Tensor tile_rows(const ad::Tensor& t, std::size_t copies) {
  std::vector<double> out;
  out.reserve(t.size() * copies);
  for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), t.values().begin(), t.values().end());
  return ad::Tensor::unchecked({t.rows() * copies, t.cols()}, std::move(out));
}

}  // namespace

Trainer::Trainer(PenaltyConfig config, const std::string& env_name, std::uint64_t seed)
    : Trainer(std::move(config), envs::make_environment(env_name), seed) {}

Trainer::Trainer(PenaltyConfig config, std::unique_ptr<envs::Environment> env, std::uint64_t seed)
    : config_(std::move(config)),
      env_(std::move(env)),
      seed_(seed),
      init_rng_(make_stream(seed, 1)),
      env_rng_(make_stream(seed, 2)),
      noise_rng_(make_stream(seed, 3)),
      policy_((config_.validate(), env_->spec().state_dim), env_->spec().action_dim, config_.hidden,
              config_.init_log_std),
      critic_([&] {
        std::vector<std::size_t> widths{env_->spec().state_dim};
        widths.insert(widths.end(), config_.hidden.begin(), config_.hidden.end());
        widths.push_back(1);
        return ad::Mlp(widths);
      }()),
      actor_opt_(ad::OptimizerKind::kAdam, config_.actor_lr),
      critic_opt_(ad::OptimizerKind::kAdam, config_.critic_lr),
      worker_(*env_, env_rng_),
      beta_(config_.beta_init) {
  policy_.initialize(init_rng_);
  critic_.initialize(init_rng_);
}

ad::Tensor Trainer::draw_noise(std::size_t rows) {
  std::normal_distribution<double> normal;
  std::vector<double> noise(rows * policy_.action_dim());
  for (double& e : noise) e = normal(noise_rng_);
  return ad::Tensor::unchecked({rows, policy_.action_dim()}, std::move(noise));
}

double Trainer::fit_critic(const Trajectory& traj) {
  const ad::Tensor states = traj.state_matrix();
  const ad::Tensor targets({traj.size(), 1}, traj.returns);
  double loss_value = 0.0;
  for (std::size_t step = 0; step < config_.critic_steps; ++step) {
    ad::Tape tape;
    const std::vector<ad::Var> vars = critic_.bind(tape);
    const ad::Var values = critic_.forward(tape.constant(states), vars);
    const ad::Var loss = ad::mean(ad::square(config_.value_scale * values - tape.constant(targets)));
    tape.backward(loss);
    loss_value = loss.value().item();
    const std::vector<ad::Tensor> grads = gradients_of(tape, vars);
    critic_opt_.step(critic_.parameters(), grads);
  }
  return loss_value;
}

double Trainer::update_actor(const PolicyBatch& batch, const corr::Kernel& kernel, std::size_t& nonfinite) {
  const std::size_t draws = config_.cim_draws;
  const ad::Tensor tiled_states = draws > 1 ? tile_rows(batch.states, draws) : ad::Tensor();
  const ad::Tensor tiled_mean = draws > 1 ? tile_rows(batch.old_mean, draws) : ad::Tensor();
  const ad::Tensor tiled_log_std = draws > 1 ? tile_rows(batch.old_log_std, draws) : ad::Tensor();

  double loss_value = 0.0;
  for (std::size_t step = 0; step < config_.actor_steps; ++step) {
    ad::Tape tape;
    const std::vector<ad::Var> vars = policy_.bind(tape);
    const policy::GaussianVars dist = policy_.forward(tape, batch.states, vars);
    ad::Var objective;
    switch (config_.variant) {
      case Variant::kClip:
        objective = surrogate_clip(batch, dist, config_.epsilon);
        break;
      case Variant::kAdaptiveKl:
        objective = surrogate_kl(batch, dist, beta_);
        break;
      case Variant::kCim:
        last_noise_ = draw_noise(batch.size() * draws);
        if (draws == 1) {
          objective = surrogate_cim(batch, dist, config_.alpha, kernel, last_noise_);
        } else {
          const ad::Var gain = ad::mean(importance_ratio(batch, dist) * tape.constant(batch.advantages));
          const policy::GaussianVars tiled = policy_.forward(tape, tiled_states, vars);
          objective = gain - config_.alpha * corr::cim_penalty(kernel, tiled_mean, tiled_log_std, tiled, last_noise_);
        }
        break;
    }
    const ad::Var loss = -objective;
    tape.backward(loss);
    loss_value = loss.value().item();
    const std::vector<ad::Tensor> grads = gradients_of(tape, vars);
    if (actor_opt_.step(policy_.parameters(), grads).nonfinite_gradient) ++nonfinite;
  }
  return loss_value;
}

IterationRecord Trainer::iterate() {
  const auto start = std::chrono::steady_clock::now();
  IterationRecord record;
  record.iteration = iteration_;

  const GaussianPolicy old_policy = policy_;
  Trajectory traj = worker_.collect(as_policy_fn(old_policy), config_.batch_size);
  env_steps_ += traj.size();
  traj = compute_advantages(std::move(traj), critic_, config_.gamma, true, config_.value_scale);

  record.episodes_finished = traj.completed_returns.size();
  if (!traj.completed_returns.empty()) {
    double total = 0.0;
    for (double r : traj.completed_returns) total += r;
    last_return_ = total / static_cast<double>(traj.completed_returns.size());
    have_return_ = true;
    record.return_mean = last_return_;
  } else if (have_return_) {
    record.return_mean = last_return_;
  } else {
    const double steps = static_cast<double>(std::max<std::size_t>(worker_.partial_steps(), 1));
    record.return_mean = worker_.partial_return() * static_cast<double>(env_->spec().max_steps) / steps;
  }

  record.critic_loss = fit_critic(traj);

  PolicyBatch batch = make_batch(traj, old_policy);
  double bandwidth = config_.bandwidth;
  if (config_.sigma_mode == SigmaMode::kSilverman) bandwidth = corr::silverman_bandwidth(traj.actions);
  const corr::Kernel kernel(config_.kernel, bandwidth);
  record.kernel_bandwidth = bandwidth;

  record.actor_loss = update_actor(batch, kernel, record.nonfinite_grad_count);
  record.sigma_clamp_events = policy_.clamped_dimensions();

  switch (config_.variant) {
    case Variant::kClip:
      record.penalty_value = clip_fraction(batch, policy_, config_.epsilon);
      break;
    case Variant::kAdaptiveKl: {
      const double d = mean_policy_kl(batch, policy_);
      record.penalty_value = d;
      beta_ = adaptive_beta_update(beta_, d, config_.d_targ);
      break;
    }
    case Variant::kCim: {
      ad::Tape tape;
      const std::vector<ad::Var> vars = policy_.bind(tape);
      if (config_.cim_draws == 1) {
        const policy::GaussianVars dist = policy_.forward(tape, batch.states, vars);
        record.penalty_value =
            corr::cim_penalty(kernel, batch.old_mean, batch.old_log_std, dist, last_noise_).value().item();
      } else {
        const std::size_t draws = config_.cim_draws;
        const policy::GaussianVars dist = policy_.forward(tape, tile_rows(batch.states, draws), vars);
        record.penalty_value = corr::cim_penalty(kernel, tile_rows(batch.old_mean, draws),
                                                 tile_rows(batch.old_log_std, draws), dist, last_noise_)
                                   .value()
                                   .item();
      }
      break;
    }
  }
  record.beta = beta_;
  record.env_steps = env_steps_;
  last_batch_ = std::move(batch);
  ++iteration_;
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

RunLog Trainer::train(std::size_t iterations, const std::function<void(const IterationRecord&)>& on_record) {
  require(iterations >= 1, "train: iterations must be at least 1");
  RunLog log;
  log.config = config_;
  log.env_name = env_->spec().name;
  log.seed = seed_;
  log.records.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    log.records.push_back(iterate());
    if (on_record) on_record(log.records.back());
  }
  return log;
}

RunLog train(const PenaltyConfig& config, const std::string& env_name, std::uint64_t seed, std::size_t iterations) {
  Trainer trainer(config, env_name, seed);
  return trainer.train(iterations);
}

double evaluate_policy(const GaussianPolicy& policy, const std::string& env_name, std::size_t episodes,
                       std::uint64_t seed) {
  require(episodes >= 1, "evaluate_policy: episodes must be at least 1");
  auto env = envs::make_environment(env_name);
  envs::Rng rng = make_stream(seed, 7);
  double total = 0.0;
  for (std::size_t e = 0; e < episodes; ++e) {
    const Trajectory traj = rollout(*env, as_policy_fn(policy), env->spec().max_steps, rng);
    for (double r : traj.rewards) total += r;
  }
  return total / static_cast<double>(episodes);
}

}  // namespace rllab::ppo
