#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace nikhp {

/// One polyline of a log-scale error chart.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // plotted as log10(y); nonpositive values are clamped
};

/// Self-contained SVG line chart of log10(error) against the order n.
/// No plotting dependency; enough for the sweep diagnostics.
inline std::string svg_log_chart(const std::string& title, const std::vector<SvgSeries>& series) {
  const int width = 640, height = 420;
  const int ml = 70, mr = 20, mt = 40, mb = 50;
  const char* colors[] = {"#1f6feb", "#d1242f", "#1a7f37", "#8250df", "#bf8700", "#0b7285"};

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double ly = std::log10(std::max(s.y[i], 1e-300));
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, ly);
      ymax = std::max(ymax, ly);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = -1;
    ymax = 0;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double ly) { return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb); };

  char buf[512];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns='http://www.w3.org/2000/svg' width='%d' height='%d' "
                "viewBox='0 0 %d %d' font-family='monospace' font-size='12'>\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width='100%' height='100%' fill='white'/>\n";
  std::snprintf(buf, sizeof(buf), "<text x='%d' y='24' font-size='14'>%s</text>\n", ml,
                title.c_str());
  svg += buf;

  // Axes and integer-decade gridlines.
  std::snprintf(buf, sizeof(buf),
                "<line x1='%d' y1='%d' x2='%d' y2='%d' stroke='black'/>\n"
                "<line x1='%d' y1='%d' x2='%d' y2='%d' stroke='black'/>\n",
                ml, height - mb, width - mr, height - mb, ml, mt, ml, height - mb);
  svg += buf;
  for (int d = int(std::ceil(ymin)); d <= int(std::floor(ymax)); ++d) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%d' y1='%.1f' x2='%d' y2='%.1f' stroke='#dddddd'/>"
                  "<text x='6' y='%.1f'>1e%d</text>\n",
                  ml, py(d), width - mr, py(d), py(d) + 4, d);
    svg += buf;
  }
  for (double x = std::ceil(xmin); x <= std::floor(xmax) + 1e-9; x += 1.0) {
    std::snprintf(buf, sizeof(buf), "<text x='%.1f' y='%d'>%g</text>\n", px(x) - 4,
                  height - mb + 18, x);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf), "<text x='%d' y='%d'>n</text>\n", width - mr - 10,
                height - mb + 34);
  svg += buf;

  int ci = 0;
  for (const auto& s : series) {
    const char* color = colors[ci % 6];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]),
                    py(std::log10(std::max(s.y[i], 1e-300))));
      pts += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline points='%s' fill='none' stroke='%s' stroke-width='1.5'/>\n",
                  pts.c_str(), color);
    svg += buf;
    std::snprintf(buf, sizeof(buf), "<text x='%d' y='%d' fill='%s'>%s</text>\n", width - mr - 160,
                  mt + 16 * (ci + 1), color, s.label.c_str());
    svg += buf;
    ++ci;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace nikhp
