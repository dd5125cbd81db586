#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace citemetrics {

struct ChartSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 440;
};

// Standalone SVG 1.1 line chart, one <polyline> per series. Output depends
// only on the input (fixed number formatting, input order preserved).
// Throws std::invalid_argument for an empty series set or an empty series.
std::string emit_svg_chart(std::span<const ChartSeries> series, const ChartOptions& options = {});

}  // namespace citemetrics
