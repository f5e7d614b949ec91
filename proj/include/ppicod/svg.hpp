#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ppicod {

/// (satisfaction, code length) coordinates.
using PlotPoint = std::pair<double, double>;

struct ScatterSeries {
    std::string label;
    std::vector<PlotPoint> points;
};

struct PlotSpec {
    std::string title;
    std::vector<ScatterSeries> series;
    std::optional<std::vector<PlotPoint>> boundary;  // drawn as a step line
    std::string x_label = "overall satisfaction s";
    std::string y_label = "code length ell";
};

/// Self-contained SVG: axes with integer ticks, one marker style per series, legend,
/// labelled boundary points. Output depends only on the input.
std::string render_scatter_svg(const PlotSpec& spec);

}  // namespace ppicod
