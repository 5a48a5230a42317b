#pragma once

#include <string>
#include <vector>

namespace dnls {

// Minimal 2D plot writer. Points carry their exact coordinates in data-x /
// data-y attributes so plotted values can be checked against the CSV.
class SvgPlot {
 public:
  enum class Style { Markers, Line, Stems };

  struct Series {
    std::string label;
    std::string color;
    Style style = Style::Markers;
    std::vector<double> x, y;
  };

  SvgPlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add(Series s) { series_.push_back(std::move(s)); }
  std::string render(int width = 640, int height = 480) const;

 private:
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace dnls
