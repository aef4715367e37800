#include "rllab/oracles/oracles.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace rllab::oracles {

double normal_pdf(double x, double mu, double sigma) {
  return boost::math::pdf(boost::math::normal_distribution<double>(mu, sigma), x);
}

double kl_quadrature_1d(double mp, double sp, double mq, double sq) {
  auto integrand = [&](double x) {
    const double p = normal_pdf(x, mp, sp);
    if (p == 0.0) return 0.0;
    const double zp = (x - mp) / sp, zq = (x - mq) / sq;
    return p * (std::log(sq / sp) - 0.5 * zp * zp + 0.5 * zq * zq);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Integrate each side of the mode separately so the peak sits on a node boundary.
  const double left = Quad::integrate(integrand, mp - 40.0 * sp, mp, 20, 1e-15);
  const double right = Quad::integrate(integrand, mp, mp + 40.0 * sp, 20, 1e-15);
  return left + right;
}

McEstimate kl_monte_carlo(std::span<const double> mp, std::span<const double> sp, std::span<const double> mq,
                          std::span<const double> sq, std::size_t samples, std::mt19937_64& rng) {
  const std::size_t n = mp.size();
  std::normal_distribution<double> normal;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double log_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = mp[i] + sp[i] * normal(rng);
      const double zp = (x - mp[i]) / sp[i], zq = (x - mq[i]) / sq[i];
      log_ratio += std::log(sq[i] / sp[i]) - 0.5 * zp * zp + 0.5 * zq * zq;
    }
    sum += log_ratio;
    sum_sq += log_ratio * log_ratio;
  }
  const double m = sum / static_cast<double>(samples);
  const double var = std::max(sum_sq / static_cast<double>(samples) - m * m, 0.0);
  return {m, std::sqrt(var / static_cast<double>(samples))};
}

double tv_from_cdf_1d(double mp, double sp, double mq, double sq) {
  // log p - log q = a x^2 + b x + c.
  const double a = 0.5 / (sq * sq) - 0.5 / (sp * sp);
  const double b = mp / (sp * sp) - mq / (sq * sq);
  const double c = mq * mq / (2 * sq * sq) - mp * mp / (2 * sp * sp) + std::log(sq / sp);
  std::vector<double> cuts;
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 0) cuts.push_back(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc > 0) {
      cuts.push_back((-b - std::sqrt(disc)) / (2 * a));
      cuts.push_back((-b + std::sqrt(disc)) / (2 * a));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const boost::math::normal_distribution<double> p(mp, sp), q(mq, sq);
  auto cdf_diff = [&](double x) {
    if (std::isinf(x)) return 0.0;
    return boost::math::cdf(p, x) - boost::math::cdf(q, x);
  };
  std::vector<double> edges{-INFINITY};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(INFINITY);
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) tv += std::abs(cdf_diff(edges[i + 1]) - cdf_diff(edges[i]));
  return 0.5 * tv;
}

std::vector<ad::Tensor> finite_difference(const std::function<double(const std::vector<ad::Tensor>&)>& f,
                                          const std::vector<ad::Tensor>& params, double step) {
  std::vector<ad::Tensor> work = params;
  std::vector<ad::Tensor> grads;
  for (std::size_t p = 0; p < params.size(); ++p) {
    std::vector<double> g(params[p].size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::vector<double> plus = params[p].values(), minus = params[p].values();
      plus[i] += step;
      minus[i] -= step;
      work[p] = ad::Tensor(params[p].shape(), plus);
      const double fp = f(work);
      work[p] = ad::Tensor(params[p].shape(), minus);
      const double fm = f(work);
      work[p] = params[p];
      g[i] = (fp - fm) / (2 * step);
    }
    grads.emplace_back(params[p].shape(), std::move(g));
  }
  return grads;
}

double max_relative_error(const std::vector<ad::Tensor>& a, const std::vector<ad::Tensor>& b, double floor) {
  if (a.size() != b.size()) throw std::invalid_argument("max_relative_error: list sizes differ");
  double worst = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].size() != b[p].size()) throw std::invalid_argument("max_relative_error: tensor sizes differ");
    for (std::size_t i = 0; i < a[p].size(); ++i) {
      const double x = a[p][i], y = b[p][i];
      worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor}));
    }
  }
  return worst;
}

std::vector<double> mlp_reference(const std::vector<ad::Tensor>& params, std::span<const double> input) {
  std::vector<double> h(input.begin(), input.end());
  const std::size_t layers = params.size() / 2;
  for (std::size_t l = 0; l < layers; ++l) {
    const ad::Tensor& w = params[2 * l];
    const ad::Tensor& b = params[2 * l + 1];
    const std::size_t in = w.shape()[0], out = w.shape()[1];
    std::vector<double> next(out);
    for (std::size_t j = 0; j < out; ++j) {
      double acc = b[j];
      for (std::size_t i = 0; i < in; ++i) acc += h[i] * w[i * out + j];
      next[j] = l + 1 < layers ? std::tanh(acc) : acc;
    }
    h = std::move(next);
  }
  return h;
}

double gaussian_smoothing_correntropy(double sigma_k, double s2, double dmu) {
  const double k2 = sigma_k * sigma_k;
  return std::sqrt(k2 / (k2 + s2)) * std::exp(-dmu * dmu / (2 * (k2 + s2)));
}

}  // namespace rllab::oracles
