#pragma once

#include <string>
#include <vector>

namespace rllab::harness {

struct AsymmetryCell {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double kl_pq = 0.0;  // KL(N(mu1, sigma1^2) || N(mu2, sigma2^2))
  double kl_qp = 0.0;
  double abs_difference = 0.0;
};

enum class GridSpacing { kLinear, kLog };

// grid x grid cells over sigma1, sigma2 in [sigma_min, sigma_max], sigma1
// varying slowest. Throws ContractError on a bad range or grid < 2.
std::vector<AsymmetryCell> asymmetry_grid(double mu1, double mu2, double sigma_min, double sigma_max,
                                          std::size_t grid, GridSpacing spacing);

inline constexpr const char* kAsymmetryHeader = "sigma1,sigma2,kl_pq,kl_qp,abs_difference";

void write_asymmetry_csv(const std::string& path, const std::vector<AsymmetryCell>& cells);

}  // namespace rllab::harness
