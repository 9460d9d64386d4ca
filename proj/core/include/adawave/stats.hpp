#ifndef ADAWAVE_STATS_HPP
#define ADAWAVE_STATS_HPP

#include <span>

namespace adawave {

struct MedianCi {
    double median = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate = false;  // too few samples for the requested coverage
};

// Sample median with a distribution-free confidence interval: the endpoints
// are order statistics picked from binomial(n, 1/2) tail sums, so coverage is
// conservative (>= level). Needs at least 6 samples for a real interval.
MedianCi median_ci(std::span<const double> samples, double level = 0.95);

// Two-sided Mann-Whitney U test p-value. Midranks handle ties. Small pooled
// samples (n1 + n2 <= 20) are enumerated exactly; larger ones use the normal
// approximation with tie correction and continuity correction.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

}  // namespace adawave

#endif
