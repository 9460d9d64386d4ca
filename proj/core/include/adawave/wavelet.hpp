#ifndef ADAWAVE_WAVELET_HPP
#define ADAWAVE_WAVELET_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "adawave/dyadic.hpp"

namespace adawave {

// 2^(i/2) for possibly negative i, built from exact ldexp steps so the same
// value is produced everywhere it is needed.
inline double scale_pow2_half(int i) {
    const int q = (i >= 0) ? i / 2 : -((-i + 1) / 2);
    const int r = i - 2 * q;  // 0 or 1
    return std::ldexp(r ? std::numbers::sqrt2 : 1.0, q);
}

enum class BoundaryMode {
    periodized,        // circular filter bank, the default
    interval_filters,  // filter family supplied by an external table file
};

// An orthonormal compactly-supported wavelet filter bank on [0, 1].
//
// The low-pass taps h[0..2L) define both analysis filters; the high-pass is
// the usual quadrature mirror g[m] = (-1)^m h[2L-1-m]. Filters are anchored
// so that the basis function with index (j, k) lives on
// S(j,k) = 2^-j [k-L+1, k+L), the interval returned by support().
class WaveletSpec {
public:
    // Haar filter (N = 1), exact taps.
    static WaveletSpec haar(int coarsest_level = 0);

    // Minimum-phase Daubechies filter with N vanishing moments, N in [2, 10].
    static WaveletSpec daubechies(int vanishing_moments, int coarsest_level);

    // Loads taps from a plain-text table: header line "N L", one tap per line.
    static WaveletSpec from_filter_file(const std::string& path, int coarsest_level);

    const std::vector<double>& lowpass() const { return h_; }
    const std::vector<double>& highpass() const { return g_; }
    int vanishing_moments() const { return vanishing_moments_; }
    int half_support() const { return half_support_; }  // L, filter length 2L
    int coarsest_level() const { return coarsest_level_; }
    BoundaryMode boundary_mode() const { return boundary_; }

private:
    WaveletSpec(std::vector<double> taps, int vanishing_moments, int coarsest_level,
                BoundaryMode boundary);
    void validate() const;

    std::vector<double> h_;
    std::vector<double> g_;
    int vanishing_moments_;
    int half_support_;
    int coarsest_level_;
    BoundaryMode boundary_;
};

// Coefficients of one transform: scaling values at the coarsest level plus
// detail levels coarsest .. top-1. Level j holds 2^j values.
struct CoefficientPyramid {
    int coarsest = 0;
    int top = 0;
    std::vector<double> scaling;
    std::vector<std::vector<double>> details;

    std::size_t level_size(int j) const { return std::size_t{1} << j; }
    double sum_squares() const;
};

// Orthogonal analysis of 2^i values sampled on the level-i grid.
CoefficientPyramid fwt_forward(std::span<const double> values, const WaveletSpec& spec);

// Exact inverse of fwt_forward; returns the level-top scaling vector.
std::vector<double> fwt_inverse(const CoefficientPyramid& pyramid, const WaveletSpec& spec);

// S(j,k) = 2^-j [k-L+1, k+L) clipped to [0, 1), with exact dyadic endpoints.
DyadicInterval support(int j, std::uint64_t k, const WaveletSpec& spec);

// Level-j cells covered by the periodized basis function (j, k): cell indices
// start, start+1, ... (count of them, wrapping mod 2^j). This is the actual
// footprint used for grid-membership tests; support() reports the clipped
// interval of the unwrapped formula.
struct SupportCells {
    std::uint64_t start = 0;
    std::uint64_t count = 0;
    std::uint64_t modulus = 0;

    std::uint64_t cell(std::uint64_t t) const { return (start + t) & (modulus - 1); }
};
SupportCells support_cells(int j, std::uint64_t k, const WaveletSpec& spec);

namespace detail {
// One filter-bank step, exposed for reuse by the pyramid driver.
// in has even length n; out_a/out_d have length n/2.
void analysis_step(std::span<const double> in, const WaveletSpec& spec,
                   std::span<double> out_a, std::span<double> out_d);
void synthesis_step(std::span<const double> in_a, std::span<const double> in_d,
                    const WaveletSpec& spec, std::span<double> out);
}  // namespace detail

}  // namespace adawave

#endif
