#include "ppicod/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace ppicod {

namespace {

constexpr double width = 640;
constexpr double height = 480;
constexpr double left = 70;
constexpr double right = 170;  // legend column
constexpr double top = 40;
constexpr double bottom = 60;

constexpr std::array palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};

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

struct Range {
    double lo;
    double hi;
};

Range axis_range(double lo, double hi) {
    lo = std::floor(lo) - 1;
    hi = std::ceil(hi) + 1;
    lo = std::max(lo, 0.0);
    if (hi <= lo) {
        hi = lo + 1;
    }
    return {lo, hi};
}

double tick_step(const Range& r) {
    const double span = r.hi - r.lo;
    double step = 1;
    while (span / step > 12) {
        step *= (static_cast<long long>(step) % 5 == 0 || step < 2) ? 2 : 2.5;
    }
    return step;
}

std::string marker(std::size_t style, double x, double y, const char* color) {
    switch (style % 3) {
        case 0:
            return fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="none" stroke="{}" stroke-width="1.5"/>)",
                               x, y, color);
        case 1:
            return fmt::format(
                R"(<rect x="{:.2f}" y="{:.2f}" width="7" height="7" fill="none" stroke="{}" stroke-width="1.5"/>)",
                x - 3.5, y - 3.5, color);
        default:
            return fmt::format(
                R"(<path d="M {:.2f} {:.2f} L {:.2f} {:.2f} L {:.2f} {:.2f} Z" fill="none" stroke="{}" stroke-width="1.5"/>)",
                x, y - 4.5, x - 4.5, y + 3.5, x + 4.5, y + 3.5, color);
    }
}

}  // namespace

std::string render_scatter_svg(const PlotSpec& spec) {
    double xmin = 1e300;
    double xmax = -1e300;
    double ymin = 1e300;
    double ymax = -1e300;
    auto extend = [&](const PlotPoint& p) {
        xmin = std::min(xmin, p.first);
        xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    };
    for (const auto& s : spec.series) {
        std::for_each(s.points.begin(), s.points.end(), extend);
    }
    if (spec.boundary) {
        std::for_each(spec.boundary->begin(), spec.boundary->end(), extend);
    }
    if (xmin > xmax) {
        xmin = ymin = 0;
        xmax = ymax = 1;
    }
    const Range xr = axis_range(xmin, xmax);
    const Range yr = axis_range(ymin, ymax);
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += fmt::format(
        R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">)",
        width, height, width, height);
    out += "\n";
    out += fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", width, height) + "\n";
    out += fmt::format(R"(<text x="{:.2f}" y="22" text-anchor="middle" font-size="14">{}</text>)", left + pw / 2,
                       escape(spec.title)) +
           "\n";

    // Axes and ticks.
    out += fmt::format(R"(<g stroke="black" stroke-width="1"><line x1="{0:.2f}" y1="{1:.2f}" x2="{2:.2f}" y2="{1:.2f}"/>)"
                       R"(<line x1="{0:.2f}" y1="{3:.2f}" x2="{0:.2f}" y2="{1:.2f}"/></g>)",
                       left, top + ph, left + pw, top) +
           "\n";
    const double xs = tick_step(xr);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9; t += xs) {
        out += fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="#ddd"/>)", px(t), top,
                           top + ph);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle">{:g}</text>)", px(t), top + ph + 16, t);
        out += "\n";
    }
    const double ys = tick_step(yr);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9; t += ys) {
        out += fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{2:.2f}" y2="{1:.2f}" stroke="#ddd"/>)", left, py(t),
                           left + pw);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end">{:g}</text>)", left - 6, py(t) + 4, t);
        out += "\n";
    }
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle">{}</text>)", left + pw / 2, height - 18,
                       escape(spec.x_label)) +
           "\n";
    out += fmt::format(R"svg(<text x="18" y="{0:.2f}" text-anchor="middle" transform="rotate(-90 18 {0:.2f})">{1}</text>)svg",
                       top + ph / 2, escape(spec.y_label)) +
           "\n";

    double legend_y = top + 10;
    const double legend_x = left + pw + 20;

    if (spec.boundary && !spec.boundary->empty()) {
        auto pts = *spec.boundary;
        std::sort(pts.begin(), pts.end());
        std::string path = fmt::format("M {:.2f} {:.2f}", px(pts.front().first), py(pts.front().second));
        for (std::size_t i = 1; i < pts.size(); ++i) {
            path += fmt::format(" H {:.2f} V {:.2f}", px(pts[i].first), py(pts[i].second));
        }
        out += fmt::format(R"(<path d="{}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="5 3"/>)",
                           path) +
               "\n";
        for (const auto& p : pts) {
            out += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="6" fill="none" stroke="#d62728" stroke-width="2"/>)",
                               px(p.first), py(p.second));
            out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10" fill="#d62728">({:g}, {:g})</text>)",
                               px(p.first) + 8, py(p.second) - 8, p.second, p.first);
            out += "\n";
        }
        out += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="6" fill="none" stroke="#d62728" stroke-width="2"/>)",
                           legend_x, legend_y);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}">Pareto boundary</text>)", legend_x + 12, legend_y + 4) + "\n";
        legend_y += 20;
    }

    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const auto& s = spec.series[i];
        const char* color = palette[i % palette.size()];
        const std::set<PlotPoint> unique(s.points.begin(), s.points.end());
        for (const auto& p : unique) {
            out += marker(i, px(p.first), py(p.second), color);
            out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" fill="{}">{}</text>)", px(p.first) + 5,
                               py(p.second) + 12, color, escape(s.label));
            out += "\n";
        }
        out += marker(i, legend_x, legend_y, color);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}">{}</text>)", legend_x + 12, legend_y + 4, escape(s.label));
        out += "\n";
        legend_y += 20;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ppicod
