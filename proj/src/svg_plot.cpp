#include "ergocoh/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace ergocoh {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kColors{"#1b1b1b", "#1f5fbf", "#c0392b", "#2e8b57",
                                             "#8e44ad", "#d35400", "#7f8c8d", "#16a085"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

void write_svg(std::ostream& out, const PlotSpec& plot) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 16 << "\">" << tick(xmin) << "</text>\n";
  out << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"end\">" << tick(xmax)
      << "</text>\n";
  out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\">" << tick(ymin)
      << "</text>\n";
  out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << tick(ymax)
      << "</text>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kColors[k % kColors.size()];
    std::ostringstream pts;
    auto flush = [&] {
      const std::string p = pts.str();
      if (!p.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << " points=\"" << p << "\"/>\n";
      }
      pts.str("");
    };
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    flush();
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    out << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 36 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    out << "<text x=\"" << kLeft + pw + 40 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace ergocoh
