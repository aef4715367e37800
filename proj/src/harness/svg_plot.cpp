#include "rllab/harness/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rllab::harness {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 80, kRight = 200, kTop = 30, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string render_svg(const std::vector<CurveSeries>& series) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series");
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  for (const CurveSeries& s : series) {
    if (s.rows.empty()) throw std::invalid_argument("render_svg: series '" + s.label + "' has no rows");
    for (const CurveRow& r : s.rows) {
      x_min = std::min(x_min, static_cast<double>(r.iteration));
      x_max = std::max(x_max, static_cast<double>(r.iteration));
      y_min = std::min(y_min, r.return_mean - r.return_std_over_seeds);
      y_max = std::max(y_max, r.return_mean + r.return_std_over_seeds);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) {
    y_min -= 1;
    y_max += 1;
  }
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0, yv = y_min + (y_max - y_min) * i / 5.0;
    svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">"
        << num(xv) << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">iteration</text>\n"
      << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" font-family=\"sans-serif\" font-size=\"14\""
      << " text-anchor=\"middle\" transform=\"rotate(-90 20 " << kTop + plot_h / 2 << ")\">mean return</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const CurveSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::ostringstream band, line;
    for (const CurveRow& r : s.rows)
      band << num(px(static_cast<double>(r.iteration))) << ',' << num(py(r.return_mean + r.return_std_over_seeds))
           << ' ';
    for (auto it = s.rows.rbegin(); it != s.rows.rend(); ++it)
      band << num(px(static_cast<double>(it->iteration))) << ','
           << num(py(it->return_mean - it->return_std_over_seeds)) << ' ';
    for (const CurveRow& r : s.rows)
      line << num(px(static_cast<double>(r.iteration))) << ',' << num(py(r.return_mean)) << ' ';
    std::string band_pts = band.str(), line_pts = line.str();
    band_pts.pop_back();
    line_pts.pop_back();
    svg << "<polygon points=\"" << band_pts << "\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n"
        << "<polyline points=\"" << line_pts << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    svg << "<g class=\"legend\">\n"
        << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n"
        << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rllab::harness
