#include "dnls/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dnls/serialize.hpp"

namespace dnls {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

}  // namespace

std::string SvgPlot::render(int width, int height) const {
  constexpr double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  const bool empty = !(xmin <= xmax);
  if (empty) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax == xmin) { xmin -= 0.5; xmax += 0.5; }
  if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << px(width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
    << escape(title_) << "</text>\n";
  o << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(height - 12.0)
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label_) << "</text>\n";
  o << "<text x=\"16\" y=\"" << px(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
    << px(top + ph / 2) << ")\">" << escape(y_label_) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
    o << "<text x=\"" << px(sx(xv)) << "\" y=\"" << px(top + ph + 16) << "\" text-anchor=\"middle\" font-size=\"10\">"
      << format_double(static_cast<float>(xv)) << "</text>\n";
    o << "<text x=\"" << px(left - 4) << "\" y=\"" << px(sy(yv) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
      << format_double(static_cast<float>(yv)) << "</text>\n";
  }
  if (empty)
    o << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(top + ph / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"gray\">no data</text>\n";

  double legend_y = top + 14;
  for (const auto& s : series_) {
    const std::string color = s.color.empty() ? "black" : s.color;
    o << "<g class=\"series\" data-label=\"" << escape(s.label) << "\">\n";
    if (s.style == Style::Line && s.x.size() >= 2) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) o << (i ? " " : "") << px(sx(s.x[i])) << ',' << px(sy(s.y[i]));
      o << "\"/>\n";
    }
    if (s.style == Style::Stems) {
      const double base = sy(std::clamp(0.0, ymin, ymax));
      for (std::size_t i = 0; i < s.x.size(); ++i)
        o << "<line x1=\"" << px(sx(s.x[i])) << "\" y1=\"" << px(base) << "\" x2=\"" << px(sx(s.x[i])) << "\" y2=\""
          << px(sy(s.y[i])) << "\" stroke=\"" << color << "\"/>\n";
    }
    if (s.style != Style::Line) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        o << "<circle cx=\"" << px(sx(s.x[i])) << "\" cy=\"" << px(sy(s.y[i])) << "\" r=\"3\" fill=\"" << color
          << "\" data-x=\"" << format_double(s.x[i]) << "\" data-y=\"" << format_double(s.y[i]) << "\"/>\n";
      }
    }
    o << "</g>\n";
    if (!s.label.empty()) {
      o << "<text x=\"" << px(left + pw - 6) << "\" y=\"" << px(legend_y) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
        << color << "\">" << escape(s.label) << "</text>\n";
      legend_y += 14;
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace dnls
