#include "rllab/autodiff/mlp.hpp"

#include <cmath>

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"

namespace rllab::ad {

Mlp::Mlp(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
  require(widths_.size() >= 2, "Mlp needs at least an input and an output width");
  for (std::size_t w : widths_) require(w >= 1, "Mlp layer widths must be positive");
  for (std::size_t i = 0; i + 1 < widths_.size(); ++i) {
    params_.push_back(Tensor::zeros({widths_[i], widths_[i + 1]}));
    params_.push_back(Tensor::zeros({1, widths_[i + 1]}));
  }
}

void Mlp::initialize(std::mt19937_64& rng, double output_scale) {
  for (std::size_t layer = 0; layer < layer_count(); ++layer) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[layer]));
    const double gain = layer + 1 == layer_count() ? output_scale : 1.0;
    std::uniform_real_distribution<double> uniform(-bound, bound);
    for (double& w : params_[2 * layer].data()) w = gain * uniform(rng);
    for (double& b : params_[2 * layer + 1].data()) b = gain * uniform(rng);
  }
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const Tensor& p : params_) n += p.size();
  return n;
}

namespace {

Tensor as_batch(const Tensor& input, std::size_t width) {
  if (input.rank() <= 1) {
    require(input.size() == width, "Mlp input has " + std::to_string(input.size()) + " features, expected " +
                                       std::to_string(width));
    return Tensor::unchecked({1, width}, input.values());
  }
  require(input.rank() == 2 && input.cols() == width,
          "Mlp input shape " + shape_string(input.shape()) + " does not end in " + std::to_string(width));
  return input;
}

}  // namespace

Tensor Mlp::forward(const Tensor& input) const { return forward(input, params_); }

Tensor Mlp::forward(const Tensor& input, std::span<const Tensor> params) const {
  require(params.size() == params_.size(), "Mlp::forward: expected " + std::to_string(params_.size()) +
                                               " parameter tensors, got " + std::to_string(params.size()));
  Tensor h = as_batch(input, input_width());
  for (std::size_t layer = 0; layer < layer_count(); ++layer) {
    h = add_row(matmul(h, params[2 * layer]), params[2 * layer + 1]);
    if (layer + 1 < layer_count()) tanh_inplace(h);
  }
  return h;
}

Var Mlp::forward(Var input, std::span<const Var> params) const {
  require(params.size() == params_.size(), "Mlp::forward: expected " + std::to_string(params_.size()) +
                                               " parameter Vars, got " + std::to_string(params.size()));
  const Tensor& x = input.value();
  require(x.rank() == 2 && x.cols() == input_width(),
          "Mlp input shape " + shape_string(x.shape()) + " does not end in " + std::to_string(input_width()));
  Var h = input;
  for (std::size_t layer = 0; layer < layer_count(); ++layer) {
    h = add_row(matmul(h, params[2 * layer]), params[2 * layer + 1]);
    if (layer + 1 < layer_count()) h = tanh(h);
  }
  return h;
}

std::vector<Var> Mlp::bind(Tape& tape) const {
  std::vector<Var> vars;
  vars.reserve(params_.size());
  for (const Tensor& p : params_) vars.push_back(tape.parameter(p));
  return vars;
}

}  // namespace rllab::ad
