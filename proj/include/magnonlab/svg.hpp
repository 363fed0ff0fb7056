#pragma once

#include <string>
#include <vector>

namespace magnonlab {

// Minimal SVG 1.1 line chart: axes, ticks, one polyline per series, legend
// labels. One chart per file.
struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb2";
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    int width = 720;
    int height = 480;
};

std::string render_svg(const SvgChart& chart);
void write_svg_file(const std::string& path, const SvgChart& chart);

}  // namespace magnonlab
