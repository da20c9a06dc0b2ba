#pragma once

#include <string>
#include <vector>

namespace convexlab {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  /// Markers instead of a polyline.
  bool points = false;
  /// Join the last point back to the first.
  bool closed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  /// Equal units on both axes (for polygon overlays).
  bool equal_aspect = false;
};

/// Standalone SVG 1.1 document with an 800 x 600 viewBox. Coordinates are
/// printed at fixed precision, so equal input gives equal bytes. Throws
/// std::invalid_argument on non-finite data or mismatched series lengths.
std::string render_svg(const PlotSpec& plot);

}  // namespace convexlab
