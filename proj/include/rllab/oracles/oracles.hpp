#pragma once

// Reference computations used to check the library: numerical quadrature,
// Monte Carlo, finite differences and loop-based network evaluation. Nothing
// here shares code with the implementations it checks.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "rllab/autodiff/tensor.hpp"

namespace rllab::oracles {

// Normal density from boost.math.
double normal_pdf(double x, double mu, double sigma);

// KL(N(mp, sp^2) || N(mq, sq^2)) by adaptive Gauss-Kronrod quadrature of
// p(x) log(p(x) / q(x)).
double kl_quadrature_1d(double mp, double sp, double mq, double sq);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// KL between diagonal Gaussians from `samples` draws x ~ p of log p(x) - log q(x).
McEstimate kl_monte_carlo(std::span<const double> mp, std::span<const double> sp, std::span<const double> mq,
                          std::span<const double> sq, std::size_t samples, std::mt19937_64& rng);

// Total variation between two 1-D Gaussians from normal CDF differences
// between the density crossing points.
double tv_from_cdf_1d(double mp, double sp, double mq, double sq);

// Central differences of f at `params`, one coordinate at a time.
std::vector<ad::Tensor> finite_difference(const std::function<double(const std::vector<ad::Tensor>&)>& f,
                                          const std::vector<ad::Tensor>& params, double step = 1e-5);

// Largest |a - b| / max(|a|, |b|, floor) over all coordinates.
double max_relative_error(const std::vector<ad::Tensor>& a, const std::vector<ad::Tensor>& b, double floor = 1e-6);

// Plain triple-loop evaluation of a tanh MLP laid out as [W0, b0, W1, b1, ...].
std::vector<double> mlp_reference(const std::vector<ad::Tensor>& params, std::span<const double> input);

// E[exp(-(X - Y)^2 / (2 sigma_k^2))] for X - Y ~ N(dmu, s2).
double gaussian_smoothing_correntropy(double sigma_k, double s2, double dmu);

}  // namespace rllab::oracles
