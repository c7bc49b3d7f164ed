// Self-contained SVG line/scatter plots (fixed 800x600 viewport,
// autoscaled axes with tick labels).
#pragma once

#include <string>
#include <vector>

namespace hamflow::cli {

struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#d62728";
    bool dots = false;  // polyline when false
    std::string label;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace hamflow::cli
