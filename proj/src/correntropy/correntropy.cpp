#include "rllab/correntropy/correntropy.hpp"

#include <cmath>
#include <vector>

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"

namespace rllab::corr {

namespace {

struct SampleView {
  std::size_t count;
  std::size_t dim;
};

SampleView sample_view(const ad::Tensor& t) {
  if (t.rank() == 1) return {t.size(), 1};
  require(t.rank() == 2, "sample matrix must be rank 1 or 2, got shape " + ad::shape_string(t.shape()));
  return {t.rows(), t.cols()};
}

}  // namespace

CorrentropyEstimate correntropy(const Kernel& kernel, const ad::Tensor& xs, const ad::Tensor& ys) {
  const SampleView vx = sample_view(xs);
  const SampleView vy = sample_view(ys);
  require(vx.count == vy.count && vx.dim == vy.dim,
          "correntropy: sample sets differ in shape " + ad::shape_string(xs.shape()) + " vs " +
              ad::shape_string(ys.shape()));
  require(vx.count >= 1, "correntropy needs at least one sample");
  std::vector<double> diff(vx.dim);
  double acc = 0.0;
  for (std::size_t j = 0; j < vx.count; ++j) {
    for (std::size_t k = 0; k < vx.dim; ++k) diff[k] = xs[j * vx.dim + k] - ys[j * vx.dim + k];
    acc += kernel.eval(diff);
  }
  return CorrentropyEstimate{acc / static_cast<double>(vx.count), vx.count, kernel};
}

double cim(const Kernel& kernel, const ad::Tensor& xs, const ad::Tensor& ys) {
  const SampleView vx = sample_view(xs);
  const SampleView vy = sample_view(ys);
  require(vx.count == vy.count && vx.dim == vy.dim,
          "cim: sample sets differ in shape " + ad::shape_string(xs.shape()) + " vs " + ad::shape_string(ys.shape()));
  require(vx.count >= 1, "cim needs at least one sample");
  // Averaging kappa(0) - kappa(d) term by term keeps coincident samples at exactly zero.
  const double peak = kernel.peak();
  std::vector<double> diff(vx.dim);
  double acc = 0.0;
  for (std::size_t j = 0; j < vx.count; ++j) {
    for (std::size_t k = 0; k < vx.dim; ++k) diff[k] = xs[j * vx.dim + k] - ys[j * vx.dim + k];
    acc += peak - kernel.eval(diff);
  }
  return std::sqrt(std::max(acc / static_cast<double>(vx.count), 0.0));
}

ad::Var cim_penalty(const Kernel& kernel, const ad::Tensor& old_mean, const ad::Tensor& old_log_std,
                    const policy::GaussianVars& updated, const ad::Tensor& noise) {
  require(old_mean.shape() == updated.mean.shape() && old_log_std.shape() == updated.mean.shape(),
          "cim_penalty: old and updated batches differ in shape");
  require(noise.shape() == updated.mean.shape(), "cim_penalty: noise shape " + ad::shape_string(noise.shape()) +
                                                     " does not match the batch " +
                                                     ad::shape_string(updated.mean.shape()));
  ad::Tape& tape = *updated.mean.tape();

  // Old actions are plain numbers: the old policy is a constant here.
  std::vector<double> old_actions(noise.size());
  for (std::size_t i = 0; i < noise.size(); ++i)
    old_actions[i] = old_mean[i] + std::exp(old_log_std[i]) * noise[i];
  const ad::Var a_old = tape.constant(ad::Tensor::unchecked(noise.shape(), std::move(old_actions)));
  const ad::Var a_new = policy::reparameterized_sample(updated, noise);

  const ad::Var diff = a_old - a_new;
  const ad::Var radius_sq = ad::sum_cols(ad::square(diff));
  const ad::Var radius = ad::row_norm(diff);
  const ad::Var gap = ad::mean(kernel.peak() - kernel.eval_radius(radius, radius_sq));
  return ad::sqrt(ad::relu(gap));
}

double silverman_bandwidth(std::span<const double> samples) {
  require(samples.size() >= 2, "silverman_bandwidth needs at least two samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd >= 1e-8)) return 1.0;
  return 1.06 * sd * std::pow(n, -0.2);
}

double gaussian_taylor_partial_sum(double r, double sigma_k, int terms) {
  require(terms >= 1, "gaussian_taylor_partial_sum needs at least one term");
  require(sigma_k > 0.0, "gaussian_taylor_partial_sum needs a positive bandwidth");
  const double x = r * r / (2.0 * sigma_k * sigma_k);
  double term = 1.0;
  double total = 1.0;
  for (int n = 1; n < terms; ++n) {
    term *= -x / static_cast<double>(n);
    total += term;
  }
  return total;
}

}  // namespace rllab::corr
