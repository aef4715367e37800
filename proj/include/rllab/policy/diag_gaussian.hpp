#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rllab::policy {

// Smallest standard deviation a policy may produce during training.
inline constexpr double kSigmaFloor = 1e-4;

// N(mu, diag(sigma^2)).
class DiagGaussian {
 public:
  DiagGaussian(std::vector<double> mu, std::vector<double> sigma);

  std::size_t dim() const { return mu_.size(); }
  const std::vector<double>& mean() const { return mu_; }
  const std::vector<double>& stddev() const { return sigma_; }

  double log_prob(std::span<const double> action) const;
  // Reparameterized draw: mu + sigma * noise.
  std::vector<double> sample(std::span<const double> noise) const;

  friend bool operator==(const DiagGaussian&, const DiagGaussian&) = default;

 private:
  std::vector<double> mu_;
  std::vector<double> sigma_;
};

struct KlPair {
  double forward = 0.0;    // KL(p || q)
  double reverse = 0.0;    // KL(q || p)
  double asymmetry = 0.0;  // forward - reverse
};

// Sum over dimensions of log(sq/sp) + (sp^2 + (mp - mq)^2) / (2 sq^2) - 1/2.
double kl_closed_form(const DiagGaussian& p, const DiagGaussian& q);

KlPair kl_asymmetry(const DiagGaussian& p, const DiagGaussian& q);

// KL(p||q) - KL(q||p) evaluated directly from the per-dimension difference
// formula log(s2/s1)^2 + (s1^2 - s2^2)[(m1 - m2)^2 + s1^2 + s2^2] / (2 s1^2 s2^2),
// without going through the two divergences.
double asymmetry_difference(const DiagGaussian& p, const DiagGaussian& q);

struct PinskerResult {
  double tv_estimate = 0.0;
  double kl = 0.0;
  double tolerance = 0.0;  // 3 / sqrt(samples)
  bool holds = false;
};

// Total variation distance between two 1-D Gaussians by adaptive quadrature
// of |p - q|, split at the density crossing points.
double total_variation_1d(const DiagGaussian& p, const DiagGaussian& q);

// Checks tv^2 <= KL(p||q) + 3/sqrt(samples). TV comes from quadrature when
// dim == 1 and from a Monte-Carlo estimate of 1/2 E_p|1 - q/p| otherwise.
PinskerResult pinsker_check(const DiagGaussian& p, const DiagGaussian& q, std::size_t samples,
                            std::uint64_t seed = 0);

// sum_i [2 log h_i + (1 - h_i^4) / (2 h_i^2)] for variance ratios h_i = s1_i / s2_i.
double variance_ratio_term(std::span<const double> h);

// min(beta1, beta2) * variance_ratio_term(h).
double ordering_lower_bound(std::span<const double> h, double beta1, double beta2);

struct OrderingReport {
  double kl_12 = 0.0;            // KL(pi1 || pi2)
  double kl_21 = 0.0;            // KL(pi2 || pi1)
  double surrogate_2_from_1 = 0.0;  // adv12 - beta1 * KL(pi1 || pi2)
  double surrogate_1_from_2 = 0.0;  // adv21 - beta2 * KL(pi2 || pi1)
  double lower_bound = 0.0;      // min(beta1, beta2) * variance_ratio_term(s1 / s2)
  bool bound_exceeds_advantage_gap = false;    // lower_bound > adv12 - adv21
  bool penalty_gap_exceeds_advantage_gap = false;  // beta1*kl_12 - beta2*kl_21 > adv12 - adv21
  bool reversal = false;  // surrogate ordering disagrees with the advantage ordering
};

OrderingReport surrogate_ordering_diagnostic(const DiagGaussian& pi1, const DiagGaussian& pi2, double adv12,
                                             double adv21, double beta1, double beta2);

}  // namespace rllab::policy
