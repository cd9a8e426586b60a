#include "distroc/cli/svg.hpp"

#include <array>
#include <cstdio>

namespace distroc::cli {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 50.0;
constexpr std::array<const char*, 4> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double px(double x) { return kMargin + x * kSize; }
double py(double y) { return kMargin + (1.0 - y) * kSize; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool bisector) {
  const double total = kSize + 2 * kMargin;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(total + 120) +
                  "\" height=\"" + fmt(total) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"" + fmt(px(0)) + "\" y=\"" + fmt(py(1)) + "\" width=\"" + fmt(kSize) +
       "\" height=\"" + fmt(kSize) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = i / 4.0;
    s += "<text x=\"" + fmt(px(v)) + "\" y=\"" + fmt(py(0) + 16) + "\" text-anchor=\"middle\">" +
         fmt(v) + "</text>\n";
    s += "<text x=\"" + fmt(px(0) - 6) + "\" y=\"" + fmt(py(v) + 4) + "\" text-anchor=\"end\">" +
         fmt(v) + "</text>\n";
  }
  s += "<text x=\"" + fmt(px(0.5)) + "\" y=\"" + fmt(kMargin - 16) +
       "\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
  s += "<text x=\"" + fmt(px(0.5)) + "\" y=\"" + fmt(py(0) + 36) + "\" text-anchor=\"middle\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"14\" y=\"" + fmt(py(0.5)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       fmt(py(0.5)) + ")\">" + escape(y_label) + "</text>\n";
  if (bisector) {
    s += "<line x1=\"" + fmt(px(0)) + "\" y1=\"" + fmt(py(0)) + "\" x2=\"" + fmt(px(1)) +
         "\" y2=\"" + fmt(py(1)) + "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % kColors.size()];
    const auto& pts = series[k].points;
    if (series[k].markers) {
      for (const auto& [x, y] : pts) {
        s += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
      }
    } else {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : pts) s += fmt(px(x)) + "," + fmt(py(y)) + " ";
      s += "\"/>\n";
    }
    const double ly = kMargin + 16.0 * static_cast<double>(k);
    s += "<rect x=\"" + fmt(px(1) + 10) + "\" y=\"" + fmt(ly - 9) +
         "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    s += "<text x=\"" + fmt(px(1) + 24) + "\" y=\"" + fmt(ly) + "\">" + escape(series[k].name) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace distroc::cli
