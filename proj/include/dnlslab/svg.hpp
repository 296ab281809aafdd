#pragma once
// Minimal self-contained SVG 1.1 line plots (no plotting dependency).

#include <string>
#include <vector>

namespace dnlslab {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

std::string render_line_plot(const PlotSpec& spec,
                             const std::vector<PlotSeries>& series);

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series);

} // namespace dnlslab
