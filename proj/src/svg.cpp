#include "magnonlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace magnonlab {
namespace {

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range axis_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0.0 ? 0.05 * std::abs(lo) : 0.5;
        return {lo - pad, hi + pad};
    }
    const double pad = 0.04 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
    const int margin_left = 70;
    const int margin_right = 20;
    const int margin_top = 36;
    const int margin_bottom = 56;
    const double plot_w = chart.width - margin_left - margin_right;
    const double plot_h = chart.height - margin_top - margin_bottom;

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& s : chart.series) {
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!std::isfinite(x_lo) || !std::isfinite(y_lo)) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    const Range xr = axis_range(x_lo, x_hi);
    const Range yr = axis_range(y_lo, y_hi);

    const auto map_x = [&](double v) {
        return margin_left + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    const auto map_y = [&](double v) {
        return margin_top + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(chart.width) + "\" height=\"" + std::to_string(chart.height) +
           "\" viewBox=\"0 0 " + std::to_string(chart.width) + " " +
           std::to_string(chart.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(chart.width / 2) +
           "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\" font-family=\"sans-serif\">" +
           chart.title + "</text>\n";

    // Frame and ticks.
    out += "<rect x=\"" + std::to_string(margin_left) + "\" y=\"" + std::to_string(margin_top) +
           "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / ticks;
        const double px = map_x(fx);
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(margin_top + plot_h) + "\" x2=\"" +
               num(px) + "\" y2=\"" + num(margin_top + plot_h + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(px) + "\" y=\"" + num(margin_top + plot_h + 20) +
               "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" + num(fx) +
               "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * t / ticks;
        const double py = map_y(fy);
        out += "<line x1=\"" + std::to_string(margin_left - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
               std::to_string(margin_left) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + std::to_string(margin_left - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + num(fy) +
               "</text>\n";
    }
    out += "<text x=\"" + std::to_string(chart.width / 2) + "\" y=\"" +
           std::to_string(chart.height - 12) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" +
           chart.x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + std::to_string(chart.height / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 16 " +
           std::to_string(chart.height / 2) + ")\">" + chart.y_label + "</text>\n";

    int legend_row = 0;
    for (const auto& s : chart.series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("svg series size mismatch");
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            points += num(map_x(s.x[i])) + "," + num(map_y(s.y[i])) + " ";
        }
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
        if (s.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"" + points + "\"/>\n";
        if (!s.label.empty()) {
            const double ly = margin_top + 14 + 16 * legend_row++;
            const double lx = margin_left + plot_w - 150;
            out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) +
                   "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
            if (s.dashed) out += " stroke-dasharray=\"6 4\"";
            out += "/>\n";
            out += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) +
                   "\" font-size=\"11\" font-family=\"sans-serif\">" + s.label + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

void write_svg_file(const std::string& path, const SvgChart& chart) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << render_svg(chart);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace magnonlab
