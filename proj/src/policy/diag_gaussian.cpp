#include "rllab/policy/diag_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rllab/errors.hpp"

namespace rllab::policy {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

void require_same_dim(const DiagGaussian& p, const DiagGaussian& q, const char* op) {
  require(p.dim() == q.dim(), std::string(op) + ": dimension mismatch " + std::to_string(p.dim()) + " vs " +
                                  std::to_string(q.dim()));
}

}  // namespace

DiagGaussian::DiagGaussian(std::vector<double> mu, std::vector<double> sigma)
    : mu_(std::move(mu)), sigma_(std::move(sigma)) {
  require(!mu_.empty(), "DiagGaussian needs at least one dimension");
  require(mu_.size() == sigma_.size(), "DiagGaussian: mean and stddev lengths differ");
  for (double m : mu_) require(std::isfinite(m), "DiagGaussian: mean must be finite");
  for (double s : sigma_) require(std::isfinite(s) && s > 0.0, "DiagGaussian: stddev must be positive and finite");
}

double DiagGaussian::log_prob(std::span<const double> action) const {
  require(action.size() == dim(), "log_prob: action length " + std::to_string(action.size()) +
                                      " does not match dimension " + std::to_string(dim()));
  double total = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double z = (action[i] - mu_[i]) / sigma_[i];
    total += -std::log(sigma_[i]) - kHalfLog2Pi - 0.5 * z * z;
  }
  return total;
}

std::vector<double> DiagGaussian::sample(std::span<const double> noise) const {
  require(noise.size() == dim(), "sample: noise length does not match dimension");
  std::vector<double> a(dim());
  for (std::size_t i = 0; i < dim(); ++i) a[i] = mu_[i] + sigma_[i] * noise[i];
  return a;
}

double kl_closed_form(const DiagGaussian& p, const DiagGaussian& q) {
  require_same_dim(p, q, "kl_closed_form");
  double total = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double sp = p.stddev()[i], sq = q.stddev()[i];
    const double dm = p.mean()[i] - q.mean()[i];
    total += std::log(sq / sp) + (sp * sp + dm * dm) / (2.0 * sq * sq) - 0.5;
  }
  // Rounding can leave -1e-17 for identical inputs.
  return std::max(total, 0.0);
}

KlPair kl_asymmetry(const DiagGaussian& p, const DiagGaussian& q) {
  require_same_dim(p, q, "kl_asymmetry");
  KlPair pair;
  pair.forward = kl_closed_form(p, q);
  pair.reverse = kl_closed_form(q, p);
  pair.asymmetry = pair.forward - pair.reverse;
  return pair;
}

double asymmetry_difference(const DiagGaussian& p, const DiagGaussian& q) {
  require_same_dim(p, q, "asymmetry_difference");
  double total = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double s1 = p.stddev()[i], s2 = q.stddev()[i];
    const double v1 = s1 * s1, v2 = s2 * s2;
    const double dm = p.mean()[i] - q.mean()[i];
    total += 2.0 * std::log(s2 / s1) + (v1 - v2) * (dm * dm + v1 + v2) / (2.0 * v1 * v2);
  }
  return total;
}

double total_variation_1d(const DiagGaussian& p, const DiagGaussian& q) {
  require(p.dim() == 1 && q.dim() == 1, "total_variation_1d needs one-dimensional distributions");
  const double m1 = p.mean()[0], s1 = p.stddev()[0];
  const double m2 = q.mean()[0], s2 = q.stddev()[0];
  if (m1 == m2 && s1 == s2) return 0.0;

  // log p - log q = a x^2 + b x + c
  const double a = 1.0 / (2.0 * s2 * s2) - 1.0 / (2.0 * s1 * s1);
  const double b = m1 / (s1 * s1) - m2 / (s2 * s2);
  const double c = std::log(s2 / s1) - m1 * m1 / (2.0 * s1 * s1) + m2 * m2 / (2.0 * s2 * s2);
  std::vector<double> cuts;
  if (std::abs(a) < 1e-14 * (1.0 / (s1 * s1) + 1.0 / (s2 * s2))) {
    if (b != 0.0) cuts.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc > 0.0) {
      const double root = std::sqrt(disc);
      cuts.push_back((-b - root) / (2.0 * a));
      cuts.push_back((-b + root) / (2.0 * a));
    }
  }
  const double span = 40.0 * std::max(s1, s2);
  const double lo = std::min(m1, m2) - span;
  const double hi = std::max(m1, m2) + span;
  std::vector<double> edges{lo};
  for (double x : cuts)
    if (x > lo && x < hi) edges.push_back(x);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());

  auto integrand = [&](double x) {
    const double zp = (x - m1) / s1, zq = (x - m2) / s2;
    const double dp = std::exp(-0.5 * zp * zp) / (s1 * std::sqrt(2.0 * std::numbers::pi));
    const double dq = std::exp(-0.5 * zq * zq) / (s2 * std::sqrt(2.0 * std::numbers::pi));
    return std::abs(dp - dq);
  };
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    total += gauss_kronrod<double, 61>::integrate(integrand, edges[i], edges[i + 1], 20, 1e-13);
  return 0.5 * total;
}

PinskerResult pinsker_check(const DiagGaussian& p, const DiagGaussian& q, std::size_t samples, std::uint64_t seed) {
  require_same_dim(p, q, "pinsker_check");
  require(samples >= 10000, "pinsker_check needs at least 10^4 samples");
  PinskerResult result;
  result.kl = kl_closed_form(p, q);
  result.tolerance = 3.0 / std::sqrt(static_cast<double>(samples));
  if (p.dim() == 1) {
    result.tv_estimate = total_variation_1d(p, q);
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> noise(p.dim());
    double acc = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      for (double& e : noise) e = normal(rng);
      const std::vector<double> x = p.sample(noise);
      acc += std::abs(1.0 - std::exp(q.log_prob(x) - p.log_prob(x)));
    }
    result.tv_estimate = 0.5 * acc / static_cast<double>(samples);
  }
  result.holds = result.tv_estimate * result.tv_estimate <= result.kl + result.tolerance;
  return result;
}

double variance_ratio_term(std::span<const double> h) {
  double total = 0.0;
  for (double hi : h) {
    require(hi > 0.0 && std::isfinite(hi), "variance ratios must be positive and finite");
    const double h2 = hi * hi;
    total += 2.0 * std::log(hi) + (1.0 - h2 * h2) / (2.0 * h2);
  }
  return total;
}

double ordering_lower_bound(std::span<const double> h, double beta1, double beta2) {
  require(beta1 > 0.0 && beta2 > 0.0, "ordering_lower_bound: penalty coefficients must be positive");
  return std::min(beta1, beta2) * variance_ratio_term(h);
}

OrderingReport surrogate_ordering_diagnostic(const DiagGaussian& pi1, const DiagGaussian& pi2, double adv12,
                                             double adv21, double beta1, double beta2) {
  require_same_dim(pi1, pi2, "surrogate_ordering_diagnostic");
  require(beta1 >= 0.0 && beta2 >= 0.0, "surrogate_ordering_diagnostic: penalty coefficients must be nonnegative");
  OrderingReport r;
  r.kl_12 = kl_closed_form(pi1, pi2);
  r.kl_21 = kl_closed_form(pi2, pi1);
  r.surrogate_2_from_1 = adv12 - beta1 * r.kl_12;
  r.surrogate_1_from_2 = adv21 - beta2 * r.kl_21;
  std::vector<double> h(pi1.dim());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = pi1.stddev()[i] / pi2.stddev()[i];
  r.lower_bound = std::min(beta1, beta2) * variance_ratio_term(h);
  const double advantage_gap = adv12 - adv21;
  r.bound_exceeds_advantage_gap = r.lower_bound > advantage_gap;
  r.penalty_gap_exceeds_advantage_gap = beta1 * r.kl_12 - beta2 * r.kl_21 > advantage_gap;
  r.reversal = (adv12 > adv21 && r.surrogate_2_from_1 < r.surrogate_1_from_2) ||
               (adv12 < adv21 && r.surrogate_2_from_1 > r.surrogate_1_from_2);
  return r;
}

}  // namespace rllab::policy
