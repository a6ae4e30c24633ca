#pragma once

// Minimal standalone SVG writer: stacked panels of line plots and heatmap
// strips. Output is byte-for-byte deterministic for a given input.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace phnet::io {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
  bool dashed = false;
  bool markers = false;
};

struct LinePanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<LineSeries> series;
  std::optional<double> reference;  // horizontal dashed line
  std::string reference_label;
};

/// values(row, col): row = time sample, col = position.
struct HeatmapPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  Eigen::MatrixXd values;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
};

struct PlotSpec {
  std::string title;
  std::vector<LinePanel> lines;
  std::vector<HeatmapPanel> heatmaps;
  double width = 720.0;
  double panel_height = 260.0;
};

/// Throws EmptyData when there is nothing to draw.
std::string render_svg(const PlotSpec& spec);

}  // namespace phnet::io
