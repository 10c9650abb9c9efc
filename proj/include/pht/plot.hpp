#pragma once

#include <string>
#include <vector>

namespace pht {

/// Minimal native SVG line/scatter plot.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool points = false;  // markers instead of a polyline
    bool split_on_nan = true;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    int width = 720;
    int height = 440;

    std::string to_svg() const;
};

}  // namespace pht
