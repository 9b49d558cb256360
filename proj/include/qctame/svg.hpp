#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qctame {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<PlotSeries> series;
};

/// Static line plot with markers, axes and tick labels.
std::string line_plot_svg(const PlotSpec& plot);

}  // namespace qctame
