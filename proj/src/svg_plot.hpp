#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pwcsim {

// Minimal deterministic SVG line plots for the scenario outputs.
struct PlotSeries {
    std::string label;
    std::string color;
    bool draw_points = true;
    bool draw_line = true;
    std::vector<std::pair<double, double>> points;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<PlotSeries> series;
};

std::string render_svg(const std::vector<Plot>& panels);
void write_svg(const std::vector<Plot>& panels, const std::string& path);

}  // namespace pwcsim
