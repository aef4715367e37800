#pragma once

#include <string>
#include <vector>

#include "rllab/harness/curve_csv.hpp"

namespace rllab::harness {

struct CurveSeries {
  std::string label;
  std::vector<CurveRow> rows;
};

// Learning curves: one polyline of return_mean per series over iteration,
// a translucent polygon for the +-return_std_over_seeds band, labelled axes
// and a legend. Every series must be non-empty.
std::string render_svg(const std::vector<CurveSeries>& series);

}  // namespace rllab::harness
