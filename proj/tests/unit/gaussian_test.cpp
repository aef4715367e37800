#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"
#include "rllab/oracles/oracles.hpp"
#include "rllab/policy/diag_gaussian.hpp"
#include "rllab/policy/gaussian_tape.hpp"

namespace ad = rllab::ad;
namespace oracles = rllab::oracles;
using rllab::policy::DiagGaussian;
namespace pol = rllab::policy;

TEST(LogProb, StandardNormalAtZero) {
  EXPECT_NEAR(DiagGaussian({0.0}, {1.0}).log_prob(std::vector<double>{0.0}), -0.5 * std::log(2 * std::numbers::pi),
              1e-15);
  EXPECT_NEAR(DiagGaussian({0.0}, {1.0}).log_prob(std::vector<double>{0.0}), -0.9189385, 1e-7);
}

TEST(LogProb, AtTheMeanOnlyNormalizerRemains) {
  const DiagGaussian d({1.0, -2.0, 0.5}, {0.3, 2.0, 1.1});
  double expected = 0.0;
  for (double s : d.stddev()) expected -= std::log(s * std::sqrt(2 * std::numbers::pi));
  EXPECT_NEAR(d.log_prob(d.mean()), expected, 1e-14);
}

TEST(LogProb, FactorizesOverDimensions) {
  const DiagGaussian d({0.0, 0.0}, {1.0, 2.0});
  const double ref = std::log(oracles::normal_pdf(1.0, 0.0, 1.0) * oracles::normal_pdf(1.0, 0.0, 2.0));
  EXPECT_NEAR(d.log_prob(std::vector<double>{1.0, 1.0}), ref, 1e-12);
}

TEST(LogProb, LengthMismatch) {
  EXPECT_THROW(DiagGaussian({0.0}, {1.0}).log_prob(std::vector<double>{1.0, 2.0}), rllab::ContractError);
  EXPECT_THROW(DiagGaussian({0.0}, {0.0}), rllab::ContractError);
  EXPECT_THROW(DiagGaussian({0.0, 1.0}, {1.0}), rllab::ContractError);
}

TEST(Sample, AffineInNoise) {
  const DiagGaussian d({1.0, -1.0}, {0.5, 3.0});
  EXPECT_EQ(d.sample(std::vector<double>{0.0, 0.0}), d.mean());
  EXPECT_EQ(DiagGaussian({0.0}, {2.0}).sample(std::vector<double>{1.5}), std::vector<double>{3.0});
  EXPECT_THROW(d.sample(std::vector<double>{0.0}), rllab::ContractError);
}

TEST(Sample, LawOfLargeNumbers) {
  const DiagGaussian d({1.0}, {0.5});
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = d.sample(std::vector<double>{normal(rng)})[0];
    sum += a;
    sum_sq += a * a;
  }
  const double mean = sum / n, sd = std::sqrt(sum_sq / n - mean * mean);
  EXPECT_LT(std::abs(mean - 1.0), 3 * 0.5 / std::sqrt(n));
  EXPECT_LT(std::abs(sd - 0.5) / 0.5, 0.02);
}

TEST(Sample, ReparameterizedGradientOnTape) {
  ad::Tape tape;
  const ad::Var mean = tape.parameter(ad::Tensor::matrix(1, 2, {1.0, 2.0}));
  const ad::Var log_std = tape.parameter(ad::Tensor::matrix(1, 2, {0.0, std::log(2.0)}));
  const ad::Tensor noise = ad::Tensor::matrix(1, 2, {0.5, -1.0});
  const ad::Var a = pol::reparameterized_sample({mean, log_std}, noise);
  EXPECT_EQ(a.value(), ad::Tensor::matrix(1, 2, {1.5, 0.0}));
  tape.backward(ad::sum(a));
  EXPECT_EQ(tape.gradient(mean), ad::Tensor::matrix(1, 2, {1.0, 1.0}));
  // d/d log_std of mu + exp(log_std) * eps = exp(log_std) * eps.
  EXPECT_NEAR(tape.gradient(log_std)[0], 0.5, 1e-15);
  EXPECT_NEAR(tape.gradient(log_std)[1], -2.0, 1e-15);
}

TEST(Kl, IdenticalIsZero) {
  const DiagGaussian p({0.3, -1.0}, {0.2, 4.0});
  EXPECT_EQ(pol::kl_closed_form(p, p), 0.0);
}

TEST(Kl, UnitShiftIsOneHalf) {
  const double kl = pol::kl_closed_form(DiagGaussian({0.0}, {1.0}), DiagGaussian({1.0}, {1.0}));
  EXPECT_NEAR(kl, 0.5, 1e-15);
  EXPECT_NEAR(kl, oracles::kl_quadrature_1d(0, 1, 1, 1), 1e-8);
}

TEST(Kl, SmallVarianceRangeMatchesQuadratureAndIsAsymmetric) {
  const DiagGaussian p({1.0}, {0.01}), q({1.0}, {0.1});
  const double pq = pol::kl_closed_form(p, q), qp = pol::kl_closed_form(q, p);
  EXPECT_NEAR(pq, oracles::kl_quadrature_1d(1, 0.01, 1, 0.1), 1e-8);
  EXPECT_NEAR(qp, oracles::kl_quadrature_1d(1, 0.1, 1, 0.01), 1e-8);
  EXPECT_GT(std::abs(pq - qp), 1.0);
}

TEST(Kl, DimensionMismatch) {
  EXPECT_THROW(pol::kl_closed_form(DiagGaussian({0.0}, {1.0}), DiagGaussian({0.0, 0.0}, {1.0, 1.0})),
               rllab::ContractError);
  EXPECT_THROW(pol::kl_asymmetry(DiagGaussian({0.0}, {1.0}), DiagGaussian({0.0, 0.0}, {1.0, 1.0})),
               rllab::ContractError);
}

TEST(Kl, NonnegativeAndZeroOnlyForEqualPairs) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> mu(-3, 3), sigma(0.05, 5);
  for (int k = 0; k < 500; ++k) {
    const DiagGaussian p({mu(rng), mu(rng)}, {sigma(rng), sigma(rng)});
    const DiagGaussian q({mu(rng), mu(rng)}, {sigma(rng), sigma(rng)});
    EXPECT_GT(pol::kl_closed_form(p, q), 1e-12);
    EXPECT_LE(std::abs(pol::kl_closed_form(p, p)), 1e-12);
  }
}

TEST(Kl, MatchesQuadratureAndMonteCarloOnRandomDraws) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mu(-3, 3), sigma(0.05, 5);
  for (int k = 0; k < 40; ++k) {
    const double mp = mu(rng), sp = sigma(rng), mq = mu(rng), sq = sigma(rng);
    EXPECT_NEAR(pol::kl_closed_form(DiagGaussian({mp}, {sp}), DiagGaussian({mq}, {sq})),
                oracles::kl_quadrature_1d(mp, sp, mq, sq), 1e-8);
  }
  for (int k = 0; k < 6; ++k) {
    std::vector<double> mp(4), sp(4), mq(4), sq(4);
    for (int i = 0; i < 4; ++i) {
      mp[i] = mu(rng);
      sp[i] = sigma(rng);
      mq[i] = mu(rng);
      sq[i] = sigma(rng);
    }
    const auto mc = oracles::kl_monte_carlo(mp, sp, mq, sq, 200000, rng);
    EXPECT_LE(std::abs(pol::kl_closed_form(DiagGaussian(mp, sp), DiagGaussian(mq, sq)) - mc.mean),
              3 * mc.std_error);
  }
}

TEST(Asymmetry, VanishesForEqualVariances) {
  const DiagGaussian p({-2.0, 5.0}, {0.7, 1.3}), q({3.0, 0.0}, {0.7, 1.3});
  EXPECT_EQ(pol::kl_asymmetry(p, q).asymmetry, 0.0);
  EXPECT_EQ(pol::asymmetry_difference(p, q), 0.0);
}

TEST(Asymmetry, DirectFormulaMatchesClosedForms) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> mu(-3, 3), sigma(0.05, 5);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> mp(4), sp(4), mq(4), sq(4);
    for (int i = 0; i < 4; ++i) {
      mp[i] = mu(rng);
      sp[i] = sigma(rng);
      mq[i] = mu(rng);
      sq[i] = sigma(rng);
    }
    const DiagGaussian p(mp, sp), q(mq, sq);
    const pol::KlPair pair = pol::kl_asymmetry(p, q);
    EXPECT_EQ(pair.asymmetry, pair.forward - pair.reverse);
    EXPECT_EQ(pair.forward, pol::kl_closed_form(p, q));
    EXPECT_EQ(pair.reverse, pol::kl_closed_form(q, p));
    EXPECT_NEAR(pol::asymmetry_difference(p, q), pair.forward - pair.reverse, 1e-9 * std::max(1.0, std::abs(pair.asymmetry)));
  }
}

TEST(Asymmetry, ReachesFourOrdersOfMagnitudeOnTheFigureGrid) {
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < 60; ++j) {
      const double s1 = 0.01 * std::pow(1000.0, i / 59.0), s2 = 0.01 * std::pow(1000.0, j / 59.0);
      worst = std::max(worst, std::abs(pol::kl_asymmetry(DiagGaussian({1.0}, {s1}), DiagGaussian({2.0}, {s2})).asymmetry));
    }
  }
  EXPECT_GE(worst, 1e4);
}

TEST(Pinsker, IdenticalPair) {
  const DiagGaussian p({0.0}, {1.0});
  const auto r = pol::pinsker_check(p, p, 10000);
  EXPECT_NEAR(r.tv_estimate, 0.0, 1e-12);
  EXPECT_EQ(r.kl, 0.0);
  EXPECT_TRUE(r.holds);
  const DiagGaussian p2({0.0, 1.0}, {1.0, 2.0});
  const auto r2 = pol::pinsker_check(p2, p2, 10000);
  EXPECT_EQ(r2.tv_estimate, 0.0);
  EXPECT_TRUE(r2.holds);
}

TEST(Pinsker, UnitShiftMatchesCdfOracle) {
  const auto r = pol::pinsker_check(DiagGaussian({0.0}, {1.0}), DiagGaussian({1.0}, {1.0}), 10000);
  EXPECT_NEAR(r.tv_estimate, oracles::tv_from_cdf_1d(0, 1, 1, 1), 1e-10);
  EXPECT_NEAR(r.tv_estimate, 0.3829, 1e-4);
  EXPECT_NEAR(r.tv_estimate * r.tv_estimate, 0.1466, 1e-4);
  EXPECT_DOUBLE_EQ(r.kl, 0.5);
  EXPECT_DOUBLE_EQ(r.tolerance, 0.03);
  EXPECT_TRUE(r.holds);
}

TEST(Pinsker, MonteCarloPathAgreesWithProductOfOneDimensionalCase) {
  // Second dimension identical: TV equals the 1-D TV of the first.
  const auto r = pol::pinsker_check(DiagGaussian({0.0, 0.0}, {1.0, 1.0}), DiagGaussian({1.0, 0.0}, {1.0, 1.0}), 200000, 3);
  EXPECT_NEAR(r.tv_estimate, oracles::tv_from_cdf_1d(0, 1, 1, 1), 3 * 0.5 / std::sqrt(200000.0));
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(pol::pinsker_check(DiagGaussian({0.0}, {1.0}), DiagGaussian({0.0}, {1.0}), 100), rllab::ContractError);
}

TEST(Pinsker, RandomSweepHolds) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> mu(-3, 3), sigma(0.05, 5);
  const std::size_t dims[] = {1, 2, 4};
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = dims[k % 3];
    std::vector<double> mp(n), sp(n), mq(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      mp[i] = mu(rng);
      sp[i] = sigma(rng);
      mq[i] = mu(rng);
      sq[i] = sigma(rng);
    }
    EXPECT_TRUE(pol::pinsker_check(DiagGaussian(mp, sp), DiagGaussian(mq, sq), 20000, k).holds);
  }
}

TEST(OrderingBound, Examples) {
  EXPECT_EQ(pol::ordering_lower_bound(std::vector<double>{1.0, 1.0}, 0.4, 0.9), 0.0);
  EXPECT_NEAR(pol::ordering_lower_bound(std::vector<double>{2.0}, 1.0, 1.0), std::log(4.0) - 15.0 / 8.0, 1e-15);
  EXPECT_NEAR(pol::ordering_lower_bound(std::vector<double>{2.0}, 1.0, 1.0), -0.48871, 1e-5);
  const double expected = 0.3 * 2 * (std::log(0.25) + (1 - 0.0625) / 0.5);
  EXPECT_NEAR(pol::ordering_lower_bound(std::vector<double>{0.5, 0.5}, 0.3, 0.5), expected, 1e-15);
  EXPECT_NEAR(expected, 0.29323, 1e-5);
}

TEST(OrderingBound, RejectsNonpositiveRatios) {
  EXPECT_THROW(pol::ordering_lower_bound(std::vector<double>{0.0}, 1, 1), rllab::ContractError);
  EXPECT_THROW(pol::ordering_lower_bound(std::vector<double>{1.0, -2.0}, 1, 1), rllab::ContractError);
}

TEST(OrderingBound, EqualsScaledAsymmetryWithEqualMeans) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> sigma(0.05, 5), mu(-3, 3);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> m = {mu(rng), mu(rng)};
    const DiagGaussian pi1(m, {sigma(rng), sigma(rng)}), pi2(m, {sigma(rng), sigma(rng)});
    const std::vector<double> h = {pi1.stddev()[0] / pi2.stddev()[0], pi1.stddev()[1] / pi2.stddev()[1]};
    const double beta = 0.8;
    // The bracketed term is KL(pi2 || pi1) - KL(pi1 || pi2).
    const double ref = beta * pol::kl_asymmetry(pi2, pi1).asymmetry;
    EXPECT_NEAR(pol::ordering_lower_bound(h, beta, beta), ref, 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Ordering, SymmetricInputHasNoReversal) {
  const DiagGaussian pi({0.0}, {1.0});
  const auto r = pol::surrogate_ordering_diagnostic(pi, pi, 0.2, 0.2, 1.0, 1.0);
  EXPECT_EQ(r.surrogate_2_from_1, r.surrogate_1_from_2);
  EXPECT_FALSE(r.reversal);
}

TEST(Ordering, WideSecondPolicy) {
  const DiagGaussian pi1({0.0}, {1.0}), pi2({0.0}, {3.0});
  const auto r = pol::surrogate_ordering_diagnostic(pi1, pi2, 0.1, 0.0, 1.0, 1.0);
  const double l21 = 0.1 - pol::kl_closed_form(pi1, pi2);
  const double l12 = 0.0 - pol::kl_closed_form(pi2, pi1);
  EXPECT_DOUBLE_EQ(r.surrogate_2_from_1, l21);
  EXPECT_DOUBLE_EQ(r.surrogate_1_from_2, l12);
  EXPECT_EQ(r.reversal, l21 < l12);
}

TEST(Ordering, ZeroPenaltyFollowsAdvantages) {
  const DiagGaussian pi1({0.0}, {0.2}), pi2({1.0}, {3.0});
  for (double adv12 : {-1.0, 0.5, 2.0}) {
    const auto r = pol::surrogate_ordering_diagnostic(pi1, pi2, adv12, 0.5, 0.0, 0.0);
    EXPECT_EQ(r.surrogate_2_from_1, adv12);
    EXPECT_EQ(r.surrogate_1_from_2, 0.5);
    EXPECT_FALSE(r.reversal);
  }
}

TEST(GaussianTape, LogProbAndKlMatchScalarVersions) {
  const DiagGaussian old_d({0.2, -0.4}, {0.7, 1.5}), new_d({0.5, 0.1}, {1.1, 0.9});
  ad::Tape tape;
  const ad::Var mean = tape.parameter(ad::Tensor::matrix(1, 2, new_d.mean()));
  const ad::Var log_std = tape.parameter(ad::Tensor::matrix(1, 2, {std::log(1.1), std::log(0.9)}));
  const std::vector<double> a = {0.3, 0.3};
  EXPECT_NEAR(pol::log_prob({mean, log_std}, ad::Tensor::matrix(1, 2, a)).value().item(), new_d.log_prob(a), 1e-14);
  const ad::Var kl = pol::kl_from_fixed(ad::Tensor::matrix(1, 2, old_d.mean()),
                                        ad::Tensor::matrix(1, 2, {std::log(0.7), std::log(1.5)}), {mean, log_std});
  EXPECT_NEAR(kl.value().item(), pol::kl_closed_form(old_d, new_d), 1e-14);
}
