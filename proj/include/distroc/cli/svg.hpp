#pragma once

#include <string>
#include <utility>
#include <vector>

namespace distroc::cli {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool markers = false;  // points instead of a polyline
};

// Unit-square line chart (both axes on [0, 1]) with an optional bisector.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool bisector = true);

}  // namespace distroc::cli
