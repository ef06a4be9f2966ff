#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dscm::detail {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double d = 0.06 * (hi - lo);
    lo -= d;
    hi += d;
  }
};

// Round tick step to 1/2/5 x 10^k.
double nice_step(double span, int target) {
  const double raw = span / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
  Range rx, ry;
  for (const auto& s : spec.series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
    for (double v : s.scatter_x) rx.add(v);
    for (double v : s.scatter_y) ry.add(v);
  }
  if (!std::isfinite(rx.lo) || !std::isfinite(ry.lo))
    throw std::invalid_argument("svg chart: no finite data");
  rx.pad();
  ry.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double v) { return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
  auto py = [&](double v) { return kMarginTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";

  // Grid and ticks.
  const double sx = nice_step(rx.hi - rx.lo, 8);
  const double sy = nice_step(ry.hi - ry.lo, 8);
  svg << "<g font-family='sans-serif' font-size='12' fill='#333'>\n";
  for (double v = std::ceil(rx.lo / sx) * sx; v <= rx.hi + 1e-12; v += sx) {
    svg << "<line x1='" << px(v) << "' y1='" << kMarginTop << "' x2='" << px(v) << "' y2='"
        << kMarginTop + plot_h << "' stroke='#e0e0e0'/>\n"
        << "<text x='" << px(v) << "' y='" << kMarginTop + plot_h + 18
        << "' text-anchor='middle'>" << fmt(v) << "</text>\n";
  }
  for (double v = std::ceil(ry.lo / sy) * sy; v <= ry.hi + 1e-12; v += sy) {
    svg << "<line x1='" << kMarginLeft << "' y1='" << py(v) << "' x2='" << kMarginLeft + plot_w
        << "' y2='" << py(v) << "' stroke='#e0e0e0'/>\n"
        << "<text x='" << kMarginLeft - 8 << "' y='" << py(v) + 4
        << "' text-anchor='end'>" << fmt(v) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
      << "' height='" << plot_h << "' fill='none' stroke='#333'/>\n";

  int color = 0;
  double legend_y = kMarginTop + 10;
  for (const auto& s : spec.series) {
    const char* c = kPalette[color % 6];
    ++color;
    for (std::size_t i = 0; i < s.scatter_x.size(); ++i)
      svg << "<circle cx='" << px(s.scatter_x[i]) << "' cy='" << py(s.scatter_y[i])
          << "' r='2.5' fill='" << c << "' fill-opacity='0.35'/>\n";
    if (!s.x.empty()) {
      svg << "<polyline fill='none' stroke='" << c << "' stroke-width='2' points='";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
      svg << "'/>\n";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        svg << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i]) << "' r='3.5' fill='" << c
            << "'/>\n";
    }
    svg << "<line x1='" << kWidth - kMarginRight + 12 << "' y1='" << legend_y << "' x2='"
        << kWidth - kMarginRight + 36 << "' y2='" << legend_y << "' stroke='" << c
        << "' stroke-width='2'/>\n"
        << "<text x='" << kWidth - kMarginRight + 42 << "' y='" << legend_y + 4
        << "' font-family='sans-serif' font-size='12'>" << s.label << "</text>\n";
    legend_y += 18;
  }

  svg << "<text x='" << kMarginLeft + plot_w / 2 << "' y='22' text-anchor='middle' "
      << "font-family='sans-serif' font-size='15'>" << spec.title << "</text>\n"
      << "<text x='" << kMarginLeft + plot_w / 2 << "' y='" << kHeight - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>" << spec.x_label
      << "</text>\n"
      << "<text x='18' y='" << kMarginTop + plot_h / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 18 " << kMarginTop + plot_h / 2 << ")'>" << spec.y_label
      << "</text>\n</svg>\n";
  return svg.str();
}

void write_line_chart(const ChartSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write chart: " + path);
  out << render_line_chart(spec);
}

}  // namespace dscm::detail
