#pragma once

#include <string>
#include <vector>

namespace inext {

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

// Minimal SVG 1.1 line plot: framed axes, tick labels, one polyline per
// series with a fixed color cycle, legend in the top margin. Deterministic
// output (fixed formatting, no timestamps).
void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series);

}  // namespace inext
