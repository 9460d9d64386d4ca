#include "plot.hpp"

#include <algorithm>
#include <cmath>

#include "adawave/io.hpp"

namespace adawave::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 55.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) { return format_double(v); }

}  // namespace

std::string svg_loglog(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label) {
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    bool any = false;
    for (const Series& s : series)
        for (const Point& p : s.points) {
            const double lo = p.y_lo > 0 ? p.y_lo : p.y;
            const double hi = p.y_hi > 0 ? p.y_hi : p.y;
            if (!(p.x > 0) || !(p.y > 0)) continue;
            if (!any) {
                x_min = x_max = p.x;
                y_min = lo;
                y_max = hi;
                any = true;
            } else {
                x_min = std::min(x_min, p.x);
                x_max = std::max(x_max, p.x);
                y_min = std::min(y_min, lo);
                y_max = std::max(y_max, hi);
            }
        }
    if (!any) {
        x_min = 1;
        x_max = 10;
        y_min = 1;
        y_max = 10;
    }
    if (x_min == x_max) x_max = 2 * x_min;
    if (y_min == y_max) y_max = 2 * y_min;

    const double lx0 = std::log2(x_min), lx1 = std::log2(x_max);
    const double ly0 = std::log2(y_min), ly1 = std::log2(y_max);
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) {
        return kMarginLeft + plot_w * (std::log2(x) - lx0) / (lx1 - lx0);
    };
    auto sy = [&](double y) {
        return kMarginTop + plot_h * (1.0 - (std::log2(y) - ly0) / (ly1 - ly0));
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    const double ax = kMarginLeft, ay = kMarginTop + plot_h;
    svg += "<line x1=\"" + num(ax) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" + num(ax) +
           "\" y2=\"" + num(ay) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(ax) + "\" y1=\"" + num(ay) + "\" x2=\"" +
           num(kMarginLeft + plot_w) + "\" y2=\"" + num(ay) + "\" stroke=\"black\"/>\n";

    // power-of-two x ticks, decade-ish y ticks
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double x = std::exp2(e);
        svg += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(ay) + "\" x2=\"" + num(sx(x)) +
               "\" y2=\"" + num(ay + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(ay + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">2^" + std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const double y = std::exp2(e);
        svg += "<line x1=\"" + num(ax - 5) + "\" y1=\"" + num(sy(y)) + "\" x2=\"" + num(ax) +
               "\" y2=\"" + num(sy(y)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(ax - 8) + "\" y=\"" + num(sy(y) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">2^" + std::to_string(e) + "</text>\n";
    }
    svg += "<text x=\"" + num(kMarginLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num(kMarginTop + plot_h / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(kMarginTop + plot_h / 2) + ")\">" + y_label + "</text>\n";

    std::size_t color = 0;
    double legend_y = kMarginTop + 12;
    for (const Series& s : series) {
        const char* stroke = kColors[color % 4];
        ++color;
        std::string path;
        for (const Point& p : s.points) {
            if (!(p.x > 0) || !(p.y > 0)) continue;
            path += path.empty() ? "M" : " L";
            path += num(sx(p.x)) + " " + num(sy(p.y));
            if (p.y_lo > 0 && p.y_hi > 0 && p.y_hi > p.y_lo) {
                svg += "<line x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(p.y_lo)) + "\" x2=\"" +
                       num(sx(p.x)) + "\" y2=\"" + num(sy(p.y_hi)) + "\" stroke=\"" + stroke +
                       "\" stroke-width=\"1\"/>\n";
            }
            svg += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) +
                   "\" r=\"2.5\" fill=\"" + stroke + "\"/>\n";
        }
        if (!path.empty())
            svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + std::string(stroke) +
                   "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + num(kMarginLeft + plot_w - 150) + "\" y=\"" + num(legend_y) +
               "\" font-size=\"12\" fill=\"" + stroke + "\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace adawave::plot
