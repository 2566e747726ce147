#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ergocoh {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Minimal line chart: frame, tick labels at the data range ends, one
/// polyline per series, legend. Non-finite points break the polyline.
void write_svg(std::ostream& out, const PlotSpec& plot);

}  // namespace ergocoh
