#pragma once

#include <cstddef>
#include <span>

#include "rllab/autodiff/tape.hpp"
#include "rllab/autodiff/tensor.hpp"
#include "rllab/correntropy/kernel.hpp"
#include "rllab/policy/gaussian_tape.hpp"

namespace rllab::corr {

struct CorrentropyEstimate {
  double value = 0.0;
  std::size_t samples = 0;
  Kernel kernel{KernelFamily::kGaussian, 1.0};
};

// Sample matrices are (N, d); a rank-1 tensor is read as N scalar samples.
// Samples are paired row by row: (1/N) sum_j kappa(x_j - y_j).
CorrentropyEstimate correntropy(const Kernel& kernel, const ad::Tensor& xs, const ad::Tensor& ys);

// sqrt(max(kappa(0) - V, 0)).
double cim(const Kernel& kernel, const ad::Tensor& xs, const ad::Tensor& ys);

// CIM between an old (constant) and an updated (recorded) Gaussian batch,
// estimated from reparameterized actions that share the same noise row per
// state. Gradients reach only the updated batch. Returns a scalar Var.
ad::Var cim_penalty(const Kernel& kernel, const ad::Tensor& old_mean, const ad::Tensor& old_log_std,
                    const policy::GaussianVars& updated, const ad::Tensor& noise);

// 1.06 * sample_std * N^(-1/5); 1.0 when the spread is below 1e-8.
double silverman_bandwidth(std::span<const double> samples);

// sum_{n < terms} (-1)^n / n! * (r^2 / (2 sigma_k^2))^n.
double gaussian_taylor_partial_sum(double r, double sigma_k, int terms);

}  // namespace rllab::corr
