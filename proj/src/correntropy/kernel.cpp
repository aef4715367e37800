#include "rllab/correntropy/kernel.hpp"

#include <cmath>

#include "rllab/autodiff/ops.hpp"
#include "rllab/errors.hpp"

namespace rllab::corr {

namespace {

const double kEpanechnikovPeak = 3.0 / (4.0 * std::sqrt(5.0));
constexpr double kBiweightPeak = 15.0 / 16.0;

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kEpanechnikov: return "epanechnikov";
    case KernelFamily::kBiweight: return "biweight";
    case KernelFamily::kTriangular: return "triangular";
    case KernelFamily::kLaplace: return "laplace";
    case KernelFamily::kGaussian: return "gaussian";
    case KernelFamily::kRectangular: return "rectangular";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  for (KernelFamily f : kAllFamilies)
    if (to_string(f) == name) return f;
  throw ContractError("unknown kernel family '" + std::string(name) +
                      "' (expected epanechnikov|biweight|triangular|laplace|gaussian|rectangular)");
}

Kernel::Kernel(KernelFamily family, double bandwidth) : family_(family), bandwidth_(bandwidth) {
  require(bandwidth > 0.0 && std::isfinite(bandwidth), "kernel bandwidth must be positive and finite");
}

double Kernel::peak() const {
  switch (family_) {
    case KernelFamily::kEpanechnikov: return kEpanechnikovPeak;
    case KernelFamily::kBiweight: return kBiweightPeak;
    case KernelFamily::kRectangular: return 0.5;
    case KernelFamily::kTriangular:
    case KernelFamily::kLaplace:
    case KernelFamily::kGaussian: return 1.0;
  }
  return 1.0;
}

double Kernel::eval_radius(double r) const {
  require(std::isfinite(r) && r >= 0.0, "kernel radius must be finite and nonnegative");
  const double u = r / bandwidth_;
  switch (family_) {
    case KernelFamily::kEpanechnikov: return std::max(kEpanechnikovPeak * (1.0 - u * u / 5.0), 0.0);
    case KernelFamily::kBiweight: {
      const double t = std::max(1.0 - u * u, 0.0);
      return kBiweightPeak * t * t;
    }
    case KernelFamily::kTriangular: return std::max(1.0 - u, 0.0);
    case KernelFamily::kLaplace: return std::exp(-u);
    case KernelFamily::kGaussian: return std::exp(-0.5 * u * u);
    case KernelFamily::kRectangular: return r < bandwidth_ ? 0.5 : 0.0;
  }
  return 0.0;
}

double Kernel::eval(std::span<const double> diff) const {
  double sq = 0.0;
  for (double d : diff) {
    require(std::isfinite(d), "kernel input must be finite");
    sq += d * d;
  }
  return eval_radius(std::sqrt(sq));
}

ad::Var Kernel::eval_radius(ad::Var radius, ad::Var radius_sq) const {
  const double inv = 1.0 / bandwidth_;
  const double inv2 = inv * inv;
  switch (family_) {
    case KernelFamily::kEpanechnikov:
      return kEpanechnikovPeak * ad::relu(1.0 - (inv2 / 5.0) * radius_sq);
    case KernelFamily::kBiweight:
      return kBiweightPeak * ad::square(ad::relu(1.0 - inv2 * radius_sq));
    case KernelFamily::kTriangular:
      return ad::relu(1.0 - inv * radius);
    case KernelFamily::kLaplace:
      return ad::exp(-inv * radius);
    case KernelFamily::kGaussian:
      return ad::exp(-0.5 * inv2 * radius_sq);
    case KernelFamily::kRectangular:
      return 0.5 * ad::less_than(radius, bandwidth_);
  }
  throw ContractError("unhandled kernel family");
}

}  // namespace rllab::corr
