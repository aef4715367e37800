#include "rllab/ppo/policy_net.hpp"

#include <cmath>
#include <limits>

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"

namespace rllab::ppo {

namespace {

const double kLogSigmaFloor = std::log(policy::kSigmaFloor);

std::vector<std::size_t> layer_widths(std::size_t in, const std::vector<std::size_t>& hidden, std::size_t out) {
  std::vector<std::size_t> widths{in};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(out);
  return widths;
}

}  // namespace

GaussianPolicy::GaussianPolicy(std::size_t state_dim, std::size_t action_dim, const std::vector<std::size_t>& hidden,
                               double init_log_std)
    : net_(layer_widths(state_dim, hidden, action_dim)) {
  params_ = net_.parameters();
  params_.push_back(ad::Tensor::filled({1, action_dim}, init_log_std));
}

void GaussianPolicy::initialize(std::mt19937_64& rng) {
  net_.initialize(rng, 0.01);
  const ad::Tensor log_std = params_.back();
  params_ = net_.parameters();
  params_.push_back(log_std);
}

policy::DiagGaussian GaussianPolicy::distribution(std::span<const double> state) const {
  require(state.size() == state_dim(), "policy: state length does not match the network input");
  const ad::Tensor input = ad::Tensor::unchecked({1, state.size()}, {state.begin(), state.end()});
  const std::span<const ad::Tensor> net_params(params_.data(), params_.size() - 1);
  const ad::Tensor mu = net_.forward(input, net_params);
  std::vector<double> sigma(action_dim());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = std::exp(std::max(log_std()[i], kLogSigmaFloor));
  return policy::DiagGaussian(mu.values(), std::move(sigma));
}

ad::Tensor GaussianPolicy::mean_batch(const ad::Tensor& states) const {
  const std::span<const ad::Tensor> net_params(params_.data(), params_.size() - 1);
  return net_.forward(states, net_params);
}

ad::Tensor GaussianPolicy::log_std_batch(std::size_t rows) const {
  const std::size_t n = action_dim();
  std::vector<double> out(rows * n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(log_std()[i % n], kLogSigmaFloor);
  return ad::Tensor::unchecked({rows, n}, std::move(out));
}

std::size_t GaussianPolicy::clamped_dimensions() const {
  std::size_t count = 0;
  for (double v : log_std().data())
    if (v < kLogSigmaFloor) ++count;
  return count;
}

std::vector<ad::Var> GaussianPolicy::bind(ad::Tape& tape) const {
  std::vector<ad::Var> vars;
  vars.reserve(params_.size());
  for (const ad::Tensor& p : params_) vars.push_back(tape.parameter(p));
  return vars;
}

policy::GaussianVars GaussianPolicy::forward(ad::Tape& tape, const ad::Tensor& states,
                                             std::span<const ad::Var> params) const {
  require(params.size() == params_.size(), "policy forward: wrong number of parameter Vars");
  const ad::Var input = tape.constant(states);
  const ad::Var mean = net_.forward(input, params.first(params.size() - 1));
  const ad::Var log_std = ad::clamp(params.back(), kLogSigmaFloor, std::numeric_limits<double>::infinity());
  return policy::GaussianVars{mean, ad::broadcast_rows(log_std, states.rows())};
}

}  // namespace rllab::ppo
