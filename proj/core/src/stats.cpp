#include "adawave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <vector>

#include "adawave/errors.hpp"

namespace adawave {

namespace {

// P(Bin(n, 1/2) <= k), exact term-by-term summation.
double binomial_half_cdf(std::size_t n, std::size_t k) {
    double term = std::exp2(-static_cast<double>(n));  // P(X = 0)
    double acc = term;
    for (std::size_t i = 1; i <= k; ++i) {
        term *= static_cast<double>(n - i + 1) / static_cast<double>(i);
        acc += term;
    }
    return std::min(acc, 1.0);
}

std::vector<double> midranks(const std::vector<double>& sorted) {
    std::vector<double> ranks(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[t] = r;
        i = j + 1;
    }
    return ranks;
}

// Walks every n1-subset of {0..n-1} and counts assignments whose statistic is
// at least as far from the mean as the observed one.
double exact_two_sided_p(const std::vector<double>& ranks, std::size_t n1, double u_obs) {
    const std::size_t n = ranks.size();
    const double mu = 0.5 * static_cast<double>(n1) * static_cast<double>(n - n1);
    const double base = 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    const double dist_obs = std::abs(u_obs - mu);

    std::vector<std::size_t> comb(n1);
    for (std::size_t i = 0; i < n1; ++i) comb[i] = i;
    std::uint64_t total = 0;
    std::uint64_t extreme = 0;
    while (true) {
        double r1 = 0.0;
        for (std::size_t idx : comb) r1 += ranks[idx];
        const double u = r1 - base;
        ++total;
        if (std::abs(u - mu) >= dist_obs) ++extreme;

        // next combination in lexicographic order
        std::size_t i = n1;
        while (i > 0 && comb[i - 1] == n - n1 + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t t = i; t < n1; ++t) comb[t] = comb[t - 1] + 1;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

MedianCi median_ci(std::span<const double> samples, double level) {
    if (samples.empty()) throw InvalidInput("median_ci: empty sample");
    if (!(level > 0.0 && level < 1.0)) throw InvalidInput("median_ci: level must be in (0, 1)");
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();

    MedianCi out;
    out.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    if (n < 6) {
        out.lo = v.front();
        out.hi = v.back();
        out.degenerate = true;
        return out;
    }
    const double alpha = 1.0 - level;
    // Largest d with P(Bin(n, 1/2) <= d - 1) <= alpha/2; then [x_(d), x_(n+1-d)].
    std::size_t d = 1;
    while (d < (n + 1) / 2 && binomial_half_cdf(n, d) <= 0.5 * alpha) ++d;
    out.lo = v[d - 1];
    out.hi = v[n - d];
    return out;
}

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidInput("mann_whitney_u: samples must be non-empty");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    const std::size_t n = n1 + n2;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (double x : a) pooled.emplace_back(x, 0);
    for (double x : b) pooled.emplace_back(x, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = pooled[i].first;
    const std::vector<double> ranks = midranks(values);

    double r1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (pooled[i].second == 0) r1 += ranks[i];
    const double u1 = r1 - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);

    if (n <= 20) return exact_two_sided_p(ranks, n1, u1);

    // tie correction: sum of (t^3 - t) over tied groups
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[j + 1] == values[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double nn1 = static_cast<double>(n1);
    const double nn2 = static_cast<double>(n2);
    const double nd = static_cast<double>(n);
    const double mu = 0.5 * nn1 * nn2;
    const double var =
        nn1 * nn2 / 12.0 * (nd + 1.0 - tie_sum / (nd * (nd - 1.0)));
    if (var <= 0.0) return 1.0;
    const double z = std::max(0.0, std::abs(u1 - mu) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::numbers::sqrt2));
}

}  // namespace adawave
