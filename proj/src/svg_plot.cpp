#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "errors.hpp"

namespace pwcsim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

void render_panel(std::string& svg, const Plot& plot, double y_offset) {
    Range xr, yr;
    for (const auto& s : plot.series) {
        for (const auto& [x, y] : s.points) {
            if (std::isnan(x) || std::isnan(y)) continue;
            xr.include(plot.log_x ? std::log10(x) : x);
            yr.include(y);
        }
    }
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) {
        const double v = plot.log_x ? std::log10(x) : x;
        return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    auto py = [&](double y) {
        return y_offset + kMarginTop + plot_h -
               (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };

    svg += "<rect x='" + fmt(kMarginLeft) + "' y='" + fmt(y_offset + kMarginTop) +
           "' width='" + fmt(plot_w) + "' height='" + fmt(plot_h) +
           "' fill='white' stroke='black'/>\n";
    svg += "<text x='" + fmt(kWidth / 2) + "' y='" + fmt(y_offset + 22.0) +
           "' text-anchor='middle' font-size='15'>" + plot.title + "</text>\n";
    svg += "<text x='" + fmt(kWidth / 2) + "' y='" + fmt(y_offset + kHeight - 12.0) +
           "' text-anchor='middle' font-size='13'>" + plot.x_label + "</text>\n";
    svg += "<text x='16' y='" + fmt(y_offset + kMarginTop + plot_h / 2) +
           "' text-anchor='middle' font-size='13' transform='rotate(-90 16 " +
           fmt(y_offset + kMarginTop + plot_h / 2) + ")'>" + plot.y_label +
           "</text>\n";

    // Ticks: five per axis.
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double tx = kMarginLeft + plot_w * i / 4.0;
        const double label = plot.log_x ? std::pow(10.0, fx) : fx;
        svg += "<line x1='" + fmt(tx) + "' y1='" +
               fmt(y_offset + kMarginTop + plot_h) + "' x2='" + fmt(tx) +
               "' y2='" + fmt(y_offset + kMarginTop + plot_h + 5) +
               "' stroke='black'/>\n";
        svg += "<text x='" + fmt(tx) + "' y='" +
               fmt(y_offset + kMarginTop + plot_h + 20) +
               "' text-anchor='middle' font-size='11'>" + fmt(label) + "</text>\n";

        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double ty = y_offset + kMarginTop + plot_h - plot_h * i / 4.0;
        svg += "<line x1='" + fmt(kMarginLeft - 5) + "' y1='" + fmt(ty) +
               "' x2='" + fmt(kMarginLeft) + "' y2='" + fmt(ty) +
               "' stroke='black'/>\n";
        svg += "<text x='" + fmt(kMarginLeft - 9) + "' y='" + fmt(ty + 4) +
               "' text-anchor='end' font-size='11'>" + fmt(fy) + "</text>\n";
    }

    double legend_y = y_offset + kMarginTop + 14.0;
    for (const auto& s : plot.series) {
        if (s.draw_line) {
            std::string path;
            bool pen_down = false;
            for (const auto& [x, y] : s.points) {
                if (std::isnan(x) || std::isnan(y)) {
                    pen_down = false;
                    continue;
                }
                path += pen_down ? " L " : " M ";
                path += fmt(px(x)) + " " + fmt(py(y));
                pen_down = true;
            }
            if (!path.empty()) {
                svg += "<path d='" + path + "' fill='none' stroke='" + s.color +
                       "' stroke-width='1.5'/>\n";
            }
        }
        if (s.draw_points) {
            for (const auto& [x, y] : s.points) {
                if (std::isnan(x) || std::isnan(y)) continue;
                svg += "<circle cx='" + fmt(px(x)) + "' cy='" + fmt(py(y)) +
                       "' r='2.5' fill='" + s.color + "'/>\n";
            }
        }
        svg += "<rect x='" + fmt(kMarginLeft + plot_w - 150) + "' y='" +
               fmt(legend_y - 9) + "' width='12' height='4' fill='" + s.color +
               "'/>\n";
        svg += "<text x='" + fmt(kMarginLeft + plot_w - 132) + "' y='" +
               fmt(legend_y) + "' font-size='11'>" + s.label + "</text>\n";
        legend_y += 15.0;
    }
}

}  // namespace

std::string render_svg(const std::vector<Plot>& panels) {
    const double total_h = kHeight * static_cast<double>(panels.size());
    std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                      fmt(kWidth) + "' height='" + fmt(total_h) + "'>\n";
    svg += "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        render_panel(svg, panels[i], kHeight * static_cast<double>(i));
    }
    svg += "</svg>\n";
    return svg;
}

void write_svg(const std::vector<Plot>& panels, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << render_svg(panels);
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace pwcsim
