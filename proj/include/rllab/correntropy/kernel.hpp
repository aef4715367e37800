#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "rllab/autodiff/tape.hpp"

namespace rllab::corr {

enum class KernelFamily { kEpanechnikov, kBiweight, kTriangular, kLaplace, kGaussian, kRectangular };

inline constexpr std::array<KernelFamily, 6> kAllFamilies = {
    KernelFamily::kEpanechnikov, KernelFamily::kBiweight, KernelFamily::kTriangular,
    KernelFamily::kLaplace,      KernelFamily::kGaussian, KernelFamily::kRectangular};

std::string_view to_string(KernelFamily family);
// Accepts epanechnikov|biweight|triangular|laplace|gaussian|rectangular.
KernelFamily parse_kernel_family(std::string_view name);

// Radial kernel: every family depends on x - y only through r = ||x - y||_2.
// Compact-support families are truncated at zero from below.
class Kernel {
 public:
  Kernel(KernelFamily family, double bandwidth);

  KernelFamily family() const { return family_; }
  double bandwidth() const { return bandwidth_; }

  // kappa(0).
  double peak() const;
  double eval_radius(double r) const;
  double eval(std::span<const double> diff) const;

  // Recorded evaluation on a column of radii (B, 1). `radius_sq` must be the
  // square of `radius`; families that are smooth in r^2 use it directly.
  ad::Var eval_radius(ad::Var radius, ad::Var radius_sq) const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  KernelFamily family_;
  double bandwidth_;
};

}  // namespace rllab::corr
