#include "adawave/signals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "adawave/errors.hpp"

namespace adawave {

namespace {

// Knot tables from Donoho & Johnstone, "Ideal spatial adaptation by wavelet
// shrinkage" (1994), Table 1.
constexpr std::array<double, 11> kKnots = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                                           0.44, 0.65, 0.76, 0.78, 0.81};
constexpr std::array<double, 11> kBlockHeights = {4.0, -5.0, 3.0, -4.0,  5.0, -4.2,
                                                  2.1, 4.3,  -3.1, 2.1, -4.2};
constexpr std::array<double, 11> kBumpHeights = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                                 2.1, 4.3, 3.1, 5.1, 4.2};
constexpr std::array<double, 11> kBumpWidths = {0.005, 0.005, 0.006, 0.01,  0.01, 0.03,
                                                0.01,  0.01,  0.005, 0.008, 0.005};

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double blocks_raw(double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kKnots.size(); ++i)
        acc += kBlockHeights[i] * (1.0 + sgn(x - kKnots[i])) / 2.0;
    return acc;
}

double bumps_raw(double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kKnots.size(); ++i) {
        const double t = (x - kKnots[i]) / kBumpWidths[i];
        const double b = 1.0 + std::abs(t);
        acc += kBumpHeights[i] / (b * b * b * b);
    }
    return acc;
}

double heavisine_raw(double x) {
    return 4.0 * std::sin(4.0 * std::numbers::pi * x) - sgn(x - 0.3) - sgn(0.72 - x);
}

double doppler_raw(double x) {
    return std::sqrt(x * (1.0 - x)) * std::sin(2.0 * std::numbers::pi * 1.05 / (x + 0.05));
}

constexpr int kScaleGridLevel = 17;

double grid_sd(TestFunction fn) {
    const std::size_t n = std::size_t{1} << kScaleGridLevel;
    const double h = std::ldexp(1.0, -kScaleGridLevel);
    long double sum = 0.0L;
    for (std::size_t k = 0; k < n; ++k) sum += eval_prescaled(fn, static_cast<double>(k) * h);
    const long double mean = sum / static_cast<long double>(n);
    long double ss = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
        const long double d = eval_prescaled(fn, static_cast<double>(k) * h) - mean;
        ss += d * d;
    }
    return static_cast<double>(std::sqrt(ss / static_cast<long double>(n)));
}

}  // namespace

const char* test_function_name(TestFunction fn) {
    switch (fn) {
        case TestFunction::blocks: return "blocks";
        case TestFunction::bumps: return "bumps";
        case TestFunction::heavisine: return "heavisine";
        case TestFunction::doppler: return "doppler";
    }
    return "?";
}

std::optional<TestFunction> parse_test_function(const std::string& name) {
    for (TestFunction fn : {TestFunction::blocks, TestFunction::bumps, TestFunction::heavisine,
                            TestFunction::doppler})
        if (name == test_function_name(fn)) return fn;
    return std::nullopt;
}

double eval_prescaled(TestFunction fn, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("eval: x must lie in [0, 1]");
    switch (fn) {
        case TestFunction::blocks: return blocks_raw(x);
        case TestFunction::bumps: return bumps_raw(x);
        case TestFunction::heavisine: return heavisine_raw(x);
        case TestFunction::doppler: return doppler_raw(x);
    }
    throw InvalidInput("eval: unknown function");
}

double sd7_scale_factor(TestFunction fn) {
    static std::array<double, 4> factors;
    static std::once_flag once;
    std::call_once(once, [] {
        for (TestFunction f : {TestFunction::blocks, TestFunction::bumps, TestFunction::heavisine,
                               TestFunction::doppler})
            factors[static_cast<std::size_t>(f)] = 7.0 / grid_sd(f);
    });
    return factors[static_cast<std::size_t>(fn)];
}

double eval(TestFunction fn, double x) { return sd7_scale_factor(fn) * eval_prescaled(fn, x); }

std::vector<double> sample_grid(TestFunction fn, int level) {
    if (level < 0 || level > kMaxLevel) throw InvalidInput("sample_grid: bad level");
    const std::size_t n = std::size_t{1} << level;
    const double h = std::ldexp(1.0, -level);
    const double c = sd7_scale_factor(fn);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = c * eval_prescaled(fn, static_cast<double>(k) * h);
    return out;
}

namespace {

bool interval_contains(const DyadicInterval& outer, const DyadicInterval& inner) {
    const int shift_o = kMaxLevel - outer.level;
    const int shift_i = kMaxLevel - inner.level;
    return (outer.lo_num << shift_o) <= (inner.lo_num << shift_i) &&
           (inner.hi_num << shift_i) <= (outer.hi_num << shift_o);
}

bool interval_intersects(const DyadicInterval& a, const DyadicInterval& b) {
    const int sa = kMaxLevel - a.level;
    const int sb = kMaxLevel - b.level;
    return (a.lo_num << sa) < (b.hi_num << sb) && (b.lo_num << sb) < (a.hi_num << sa);
}

bool interval_equal(const DyadicInterval& a, const DyadicInterval& b) {
    const int sa = kMaxLevel - a.level;
    const int sb = kMaxLevel - b.level;
    return (a.lo_num << sa) == (b.lo_num << sb) && (a.hi_num << sa) == (b.hi_num << sb);
}

double lp_norm(const std::vector<double>& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::abs(x), p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace

namespace {

void validate_expansion(const FiniteExpansion& exp) {
    if (exp.coarsest < 0 || exp.depth < exp.coarsest)
        throw InvalidInput("expansion: bad level range");
    if (exp.alpha.size() != (std::size_t{1} << exp.coarsest))
        throw InvalidInput("expansion: scaling length mismatch");
    if (exp.beta.size() != static_cast<std::size_t>(exp.depth - exp.coarsest))
        throw InvalidInput("expansion: detail level count mismatch");
    for (int j = exp.coarsest; j < exp.depth; ++j)
        if (exp.beta[static_cast<std::size_t>(j - exp.coarsest)].size() != (std::size_t{1} << j))
            throw InvalidInput("expansion: detail length mismatch at level " + std::to_string(j));
}

}  // namespace

double besov_seminorm(const FiniteExpansion& exp, double r, double p) {
    validate_expansion(exp);
    if (!(p >= 1.0)) throw InvalidInput("besov_seminorm: p must be in [1, inf]");
    if (!(r > 0.0)) throw InvalidInput("besov_seminorm: r must be positive");
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    double best = std::exp2(exp.coarsest * (r + 0.5 - inv_p)) * lp_norm(exp.alpha, p);
    for (int j = exp.coarsest; j < exp.depth; ++j) {
        const auto& level = exp.beta[static_cast<std::size_t>(j - exp.coarsest)];
        best = std::max(best, std::exp2(j * (r + 0.5 - inv_p)) * lp_norm(level, p));
    }
    return best;
}

double holder_seminorm(const FiniteExpansion& exp, double s, const DyadicInterval& interval,
                       const WaveletSpec& spec) {
    validate_expansion(exp);
    if (!(s > 0.0)) throw InvalidInput("holder_seminorm: s must be positive");
    double best = 0.0;
    for (std::uint64_t k = 0; k < exp.alpha.size(); ++k)
        if (interval_contains(interval, support(exp.coarsest, k, spec)))
            best = std::max(best, std::exp2(exp.coarsest * (s + 0.5)) * std::abs(exp.alpha[k]));
    for (int j = exp.coarsest; j < exp.depth; ++j) {
        const auto& level = exp.beta[static_cast<std::size_t>(j - exp.coarsest)];
        for (std::uint64_t k = 0; k < level.size(); ++k)
            if (interval_contains(interval, support(j, k, spec)))
                best = std::max(best, std::exp2(j * (s + 0.5)) * std::abs(level[k]));
    }
    return best;
}

DetectabilityReport check_detectable(const FiniteExpansion& exp, double s, double t,
                                     const DyadicInterval& interval, const WaveletSpec& spec) {
    validate_expansion(exp);
    if (!(t > 0.0 && t < 1.0)) throw InvalidInput("check_detectable: t must be in (0, 1)");
    DetectabilityReport report;
    report.depth_checked = exp.depth;
    const int j_start = std::max(
        exp.coarsest, static_cast<int>(std::ceil(static_cast<double>(exp.coarsest) / t)));

    for (int j = j_start; j < exp.depth && report.detectable; ++j) {
        const auto& level = exp.beta[static_cast<std::size_t>(j - exp.coarsest)];
        for (std::uint64_t k = 0; k < level.size(); ++k) {
            const DyadicInterval child = support(j, k, spec);
            if (!interval_intersects(child, interval)) continue;
            const double mag = std::abs(level[k]);
            if (mag == 0.0) continue;

            bool found = false;
            const int jp_lo = std::max(exp.coarsest,
                                       static_cast<int>(std::floor(t * static_cast<double>(j))));
            for (int jp = jp_lo; jp < j && !found; ++jp) {
                const double need = (static_cast<double>(jp) / static_cast<double>(j)) *
                                    std::exp2((j - jp) * (s + 0.5)) * mag;
                // Candidate parents sit near k scaled to level jp.
                const std::uint64_t centre = k >> (j - jp);
                const std::uint64_t span = 2 * static_cast<std::uint64_t>(spec.half_support());
                const std::uint64_t lo = centre > span ? centre - span : 0;
                const std::uint64_t hi =
                    std::min<std::uint64_t>((std::uint64_t{1} << jp) - 1, centre + span);
                const auto& parents = exp.beta[static_cast<std::size_t>(jp - exp.coarsest)];
                for (std::uint64_t kp = lo; kp <= hi; ++kp) {
                    const DyadicInterval parent = support(jp, kp, spec);
                    if (!interval_contains(parent, child) || interval_equal(parent, child))
                        continue;
                    if (std::abs(parents[kp]) >= need) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                report.detectable = false;
                report.violator = {j, k};
                break;
            }
        }
    }
    return report;
}

}  // namespace adawave
