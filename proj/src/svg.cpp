#include "citemetrics/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace citemetrics {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                                    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39"};

constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fixed(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round step (1, 2 or 5 times a power of ten) giving at most ~8 ticks.
double tick_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string emit_svg_chart(std::span<const ChartSeries> series, const ChartOptions& options) {
    if (series.empty()) throw std::invalid_argument("chart needs at least one series");
    double xmin = INFINITY, xmax = -INFINITY, ymin = 0.0, ymax = -INFINITY;
    for (const ChartSeries& s : series) {
        if (s.points.empty()) throw std::invalid_argument("series '" + s.name + "' is empty");
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    const double w = options.width, h = options.height;
    const double plot_w = w - kLeft - kRight, plot_h = h - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
           std::to_string(options.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) + "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg += "<text x=\"" + fixed(w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(options.title) + "</text>\n";
    }

    // Axes and ticks.
    svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" + fixed(kLeft + plot_w) + "\" y2=\"" +
           fixed(kTop + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
    svg += "</g>\n<g>\n";
    const double xs = tick_step(xmax - xmin);
    for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-9; t += xs) {
        svg += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" + fixed(t) + "</text>\n";
    }
    const double ys = tick_step(ymax - ymin);
    for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-9; t += ys) {
        svg += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(t) + 4) + "\" text-anchor=\"end\">" + fixed(t) + "</text>\n";
    }
    svg += "</g>\n";
    if (!options.x_label.empty()) {
        svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(h - 12) + "\" text-anchor=\"middle\">" +
               escape(options.x_label) + "</text>\n";
    }
    if (!options.y_label.empty()) {
        svg += "<text x=\"16\" y=\"" + fixed(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
               fixed(kTop + plot_h / 2) + ")\">" + escape(options.y_label) + "</text>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const ChartSeries& s = series[i];
        const char* colour = kPalette[i % std::size(kPalette)];
        std::string points;
        for (const auto& [x, y] : s.points) {
            if (!points.empty()) points += ' ';
            points += fixed(px(x)) + "," + fixed(py(y));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"4 3\"";
        svg += " points=\"" + points + "\"><title>" + escape(s.name) + "</title></polyline>\n";
        const double ly = kTop + 12.0 * static_cast<double>(i);
        svg += "<text x=\"" + fixed(kLeft + plot_w + 10) + "\" y=\"" + fixed(ly + 4) + "\" fill=\"" + colour + "\">" +
               escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace citemetrics
