#pragma once

#include <string>
#include <vector>

namespace contact_focus::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

// Minimal line chart: frame, ticks, labels, legend and one polyline per
// series. Any transform of the data (log scale) is the caller's job.
struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 800;
  int height = 420;

  std::string render() const;
};

const std::string& palette(std::size_t k);

}  // namespace contact_focus::cli
