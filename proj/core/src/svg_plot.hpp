#ifndef DSCM_SVG_PLOT_HPP
#define DSCM_SVG_PLOT_HPP

#include <string>
#include <vector>

// Minimal static SVG line charts for sweep output. One curve per series,
// optional scatter markers for the per-seed samples behind each mean curve.
namespace dscm::detail {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;          // mean curve
  std::vector<double> scatter_x;  // raw samples
  std::vector<double> scatter_y;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

std::string render_line_chart(const ChartSpec& spec);
void write_line_chart(const ChartSpec& spec, const std::string& path);

}  // namespace dscm::detail

#endif  // DSCM_SVG_PLOT_HPP
