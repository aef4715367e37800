#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"

namespace rllab::ad {

// Fully connected network with tanh hidden layers and a linear output layer.
// Parameters are stored as [W0, b0, W1, b1, ...] with W_i of shape
// (widths[i], widths[i+1]) and b_i of shape (1, widths[i+1]).
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<std::size_t> widths);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases; the last
  // layer is multiplied by `output_scale`.
  void initialize(std::mt19937_64& rng, double output_scale = 1.0);

  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t input_width() const { return widths_.front(); }
  std::size_t output_width() const { return widths_.back(); }
  std::size_t layer_count() const { return widths_.size() - 1; }
  std::size_t parameter_count() const;

  std::vector<Tensor>& parameters() { return params_; }
  const std::vector<Tensor>& parameters() const { return params_; }

  // Inference without recording. Accepts (B, in) or a flat vector of length in.
  Tensor forward(const Tensor& input) const;
  // Same, with an external parameter list laid out like parameters().
  Tensor forward(const Tensor& input, std::span<const Tensor> params) const;

  // Recorded forward pass using the given parameter Vars (see bind()).
  Var forward(Var input, std::span<const Var> params) const;
  std::vector<Var> bind(Tape& tape) const;

 private:
  std::vector<std::size_t> widths_;
  std::vector<Tensor> params_;
};

}  // namespace rllab::ad
