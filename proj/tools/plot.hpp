#ifndef ADAWAVE_TOOLS_PLOT_HPP
#define ADAWAVE_TOOLS_PLOT_HPP

#include <string>
#include <vector>

namespace adawave::plot {

struct Point {
    double x = 0.0;
    double y = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;
};

struct Series {
    std::string label;
    std::vector<Point> points;
};

// Log-log chart with confidence whiskers, one polyline per series. Pure
// string assembly; deterministic output.
std::string svg_loglog(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label);

}  // namespace adawave::plot

#endif
