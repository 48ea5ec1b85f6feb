#pragma once

#include <string>
#include <vector>

namespace innov::cli {

struct ScatterPoint {
  std::string series; ///< legend entry; points of a series share a color
  std::string label;  ///< drawn next to the marker
  double x = 0.0, x_lo = 0.0, x_hi = 0.0;
  double y = 0.0, y_lo = 0.0, y_hi = 0.0;
};

/// Scatter on [0,1]² with horizontal and vertical error bars. Output depends only on the
/// arguments.
std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title, const std::string& x_label,
                        const std::string& y_label);

} // namespace innov::cli
