#include "rllab/harness/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rllab/errors.hpp"
#include "rllab/harness/run_config.hpp"
#include "rllab/policy/diag_gaussian.hpp"

namespace rllab::harness {

std::vector<AsymmetryCell> asymmetry_grid(double mu1, double mu2, double sigma_min, double sigma_max,
                                          std::size_t grid, GridSpacing spacing) {
  require(std::isfinite(mu1) && std::isfinite(mu2), "diag-asymmetry: means must be finite");
  require(std::isfinite(sigma_min) && std::isfinite(sigma_max) && sigma_min > 0 && sigma_max > sigma_min,
          "diag-asymmetry: need 0 < sigma_min < sigma_max");
  require(grid >= 2, "diag-asymmetry: grid must be at least 2");
  std::vector<double> axis(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
    axis[i] = spacing == GridSpacing::kLog ? sigma_min * std::pow(sigma_max / sigma_min, t)
                                           : sigma_min + t * (sigma_max - sigma_min);
  }
  axis.back() = sigma_max;
  std::vector<AsymmetryCell> cells;
  cells.reserve(grid * grid);
  for (double s1 : axis) {
    for (double s2 : axis) {
      const policy::KlPair kl = policy::kl_asymmetry(policy::DiagGaussian({mu1}, {s1}), policy::DiagGaussian({mu2}, {s2}));
      cells.push_back({s1, s2, kl.forward, kl.reverse, std::abs(kl.asymmetry)});
    }
  }
  return cells;
}

void write_asymmetry_csv(const std::string& path, const std::vector<AsymmetryCell>& cells) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << kAsymmetryHeader << '\n';
  for (const AsymmetryCell& c : cells)
    out << format_double(c.sigma1) << ',' << format_double(c.sigma2) << ',' << format_double(c.kl_pq) << ','
        << format_double(c.kl_qp) << ',' << format_double(c.abs_difference) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace rllab::harness
