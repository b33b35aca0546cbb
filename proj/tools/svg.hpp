#pragma once

#include <string>
#include <utility>
#include <vector>

namespace segproc::cli {

// Self-contained scatter plot: axes, tick labels, point markers, and an
// optional dashed horizontal reference line.  No external references, so
// the file renders on its own.
struct ScatterPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
    std::vector<std::string> header_comments;  // emitted as XML comments
    double reference_y = 0;
    bool draw_reference = false;
};

std::string render_scatter_svg(const ScatterPlot& plot);

}  // namespace segproc::cli
