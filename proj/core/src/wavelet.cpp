#include "adawave/wavelet.hpp"

#include <gsl/gsl_wavelet.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adawave/errors.hpp"

namespace adawave {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int exact_log2(std::size_t n) { return std::countr_zero(n); }

}  // namespace

WaveletSpec::WaveletSpec(std::vector<double> taps, int vanishing_moments, int coarsest_level,
                         BoundaryMode boundary)
    : h_(std::move(taps)),
      vanishing_moments_(vanishing_moments),
      half_support_(static_cast<int>(h_.size() / 2)),
      coarsest_level_(coarsest_level),
      boundary_(boundary) {
    validate();
    const std::size_t len = h_.size();
    g_.resize(len);
    for (std::size_t m = 0; m < len; ++m)
        g_[m] = (m % 2 ? -1.0 : 1.0) * h_[len - 1 - m];
}

void WaveletSpec::validate() const {
    if (vanishing_moments_ < 1) throw InvalidInput("vanishing moments must be >= 1");
    if (coarsest_level_ < 0) throw InvalidInput("coarsest level must be >= 0");
    if (h_.empty() || h_.size() % 2 != 0) throw InvalidInput("filter length must be even");
    if (half_support_ < 1) throw InvalidInput("half support must be >= 1");

    constexpr double tol = 1e-12;
    double sum = 0.0;
    for (double v : h_) sum += v;
    if (std::abs(sum - std::numbers::sqrt2) > tol)
        throw InvalidInput("filter taps do not sum to sqrt(2)");
    for (std::size_t lag = 0; lag < h_.size(); lag += 2) {
        double acc = 0.0;
        for (std::size_t m = 0; m + lag < h_.size(); ++m) acc += h_[m] * h_[m + lag];
        const double want = lag == 0 ? 1.0 : 0.0;
        if (std::abs(acc - want) > tol)
            throw InvalidInput("filter taps are not orthonormal to even shifts");
    }
}

WaveletSpec WaveletSpec::haar(int coarsest_level) {
    return WaveletSpec({std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0}, 1, coarsest_level,
                       BoundaryMode::periodized);
}

WaveletSpec WaveletSpec::daubechies(int vanishing_moments, int coarsest_level) {
    if (vanishing_moments == 1) return haar(coarsest_level);
    if (vanishing_moments < 1 || vanishing_moments > 10)
        throw InvalidInput("daubechies vanishing moments supported in [1, 10]");
    gsl_wavelet* w =
        gsl_wavelet_alloc(gsl_wavelet_daubechies, 2 * static_cast<std::size_t>(vanishing_moments));
    if (!w) throw InvalidInput("unable to build daubechies filter");
    std::vector<double> taps(w->h1, w->h1 + w->nc);
    gsl_wavelet_free(w);
    return WaveletSpec(std::move(taps), vanishing_moments, coarsest_level,
                       BoundaryMode::periodized);
}

WaveletSpec WaveletSpec::from_filter_file(const std::string& path, int coarsest_level) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open filter table: " + path);
    std::string header;
    if (!std::getline(in, header)) throw InvalidInput("empty filter table: " + path);
    std::istringstream hs(header);
    int n = 0, l = 0;
    if (!(hs >> n >> l)) throw InvalidInput("filter table header must be 'N L'");
    std::vector<double> taps;
    double v = 0.0;
    while (in >> v) taps.push_back(v);
    if (taps.size() != static_cast<std::size_t>(2 * l))
        throw InvalidInput("filter table tap count does not match header L");
    return WaveletSpec(std::move(taps), n, coarsest_level, BoundaryMode::interval_filters);
}

double CoefficientPyramid::sum_squares() const {
    double acc = 0.0;
    for (double v : scaling) acc += v * v;
    for (const auto& level : details)
        for (double v : level) acc += v * v;
    return acc;
}

namespace detail {

void analysis_step(std::span<const double> in, const WaveletSpec& spec, std::span<double> out_a,
                   std::span<double> out_d) {
    const std::size_t n = in.size();
    const std::size_t half = n / 2;
    const auto& h = spec.lowpass();
    const auto& g = spec.highpass();
    const std::size_t taps = h.size();
    const std::size_t shift = static_cast<std::size_t>(spec.half_support() - 1);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0;
        double d = 0.0;
        // index (2k + m - (L-1)) mod n, kept non-negative by adding n upfront
        std::size_t base = (2 * k + n - (shift % n)) % n;
        for (std::size_t m = 0; m < taps; ++m) {
            const std::size_t p = (base + m) % n;
            a += h[m] * in[p];
            d += g[m] * in[p];
        }
        out_a[k] = a;
        out_d[k] = d;
    }
}

void synthesis_step(std::span<const double> in_a, std::span<const double> in_d,
                    const WaveletSpec& spec, std::span<double> out) {
    const std::size_t half = in_a.size();
    const std::size_t n = 2 * half;
    const auto& h = spec.lowpass();
    const auto& g = spec.highpass();
    const std::size_t taps = h.size();
    const std::size_t shift = static_cast<std::size_t>(spec.half_support() - 1);
    for (std::size_t p = 0; p < n; ++p) {
        // contributions from m with 2k = (p - m + L - 1) mod n
        const std::size_t top = p + shift;
        double a = 0.0;
        for (std::size_t m = top % 2; m < taps; m += 2) {
            const std::size_t k = ((top % n + n - m % n) % n) / 2;
            a += h[m] * in_a[k];
        }
        double d = 0.0;
        for (std::size_t m = top % 2; m < taps; m += 2) {
            const std::size_t k = ((top % n + n - m % n) % n) / 2;
            d += g[m] * in_d[k];
        }
        out[p] = a + d;
    }
}

}  // namespace detail

CoefficientPyramid fwt_forward(std::span<const double> values, const WaveletSpec& spec) {
    if (!is_power_of_two(values.size()))
        throw InvalidInput("fwt_forward: input length must be a power of two");
    const int top = exact_log2(values.size());
    const int j0 = spec.coarsest_level();
    if (top <= j0) throw InvalidInput("fwt_forward: input level must exceed the coarsest level");

    CoefficientPyramid out;
    out.coarsest = j0;
    out.top = top;
    out.details.resize(static_cast<std::size_t>(top - j0));

    std::vector<double> a(values.begin(), values.end());
    std::vector<double> next;
    for (int j = top - 1; j >= j0; --j) {
        const std::size_t half = std::size_t{1} << j;
        next.resize(half);
        auto& d = out.details[static_cast<std::size_t>(j - j0)];
        d.resize(half);
        detail::analysis_step(a, spec, next, d);
        a = next;
    }
    out.scaling = std::move(a);
    return out;
}

std::vector<double> fwt_inverse(const CoefficientPyramid& pyramid, const WaveletSpec& spec) {
    const int j0 = pyramid.coarsest;
    if (j0 != spec.coarsest_level())
        throw InvalidInput("fwt_inverse: pyramid and spec coarsest levels differ");
    if (pyramid.top <= j0 ||
        pyramid.details.size() != static_cast<std::size_t>(pyramid.top - j0))
        throw InvalidInput("fwt_inverse: pyramid levels inconsistent");
    if (pyramid.scaling.size() != (std::size_t{1} << j0))
        throw InvalidInput("fwt_inverse: scaling length mismatch");

    std::vector<double> a = pyramid.scaling;
    std::vector<double> next;
    for (int j = j0; j < pyramid.top; ++j) {
        const auto& d = pyramid.details[static_cast<std::size_t>(j - j0)];
        if (d.size() != (std::size_t{1} << j))
            throw InvalidInput("fwt_inverse: detail length mismatch");
        next.resize(std::size_t{2} << j);
        detail::synthesis_step(a, d, spec, next);
        a = next;
    }
    return a;
}

DyadicInterval support(int j, std::uint64_t k, const WaveletSpec& spec) {
    if (j < 0 || j > kMaxLevel) throw InvalidInput("support: level out of range");
    if (k >= (std::uint64_t{1} << j)) throw InvalidInput("support: index out of range");
    const std::int64_t l = spec.half_support();
    const std::int64_t lo = static_cast<std::int64_t>(k) - l + 1;
    const std::int64_t hi = static_cast<std::int64_t>(k) + l;
    DyadicInterval out;
    out.level = j;
    out.lo_num = static_cast<std::uint64_t>(std::max<std::int64_t>(lo, 0));
    out.hi_num = static_cast<std::uint64_t>(std::min<std::int64_t>(hi, std::int64_t{1} << j));
    return out;
}

SupportCells support_cells(int j, std::uint64_t k, const WaveletSpec& spec) {
    if (j < 0 || j > kMaxLevel) throw InvalidInput("support_cells: level out of range");
    const std::uint64_t cells = std::uint64_t{1} << j;
    if (k >= cells) throw InvalidInput("support_cells: index out of range");
    const std::uint64_t width = 2 * static_cast<std::uint64_t>(spec.half_support()) - 1;
    SupportCells out;
    out.modulus = cells;
    out.count = std::min(width, cells);
    const std::int64_t first = static_cast<std::int64_t>(k) - spec.half_support() + 1;
    out.start = static_cast<std::uint64_t>(
                    ((first % static_cast<std::int64_t>(cells)) + static_cast<std::int64_t>(cells))) %
                cells;
    return out;
}

}  // namespace adawave
