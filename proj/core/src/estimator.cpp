#include "adawave/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "adawave/errors.hpp"

namespace adawave {

namespace {

constexpr double kNormalThirdQuartile = 0.6745;

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int max_resolution_level(std::size_t n, int coarsest_level) {
    int by_n = coarsest_level + 1;
    if (n >= 2) {
        const double ratio = static_cast<double>(n) / std::log(static_cast<double>(n));
        by_n = std::ilogb(ratio);
    }
    return std::max(coarsest_level + 1, by_n);
}

double threshold_scale(int i_n, std::size_t n, double sigma) {
    if (i_n == Design::undefined_level)
        throw InvalidInput("threshold_scale: resolution index undefined");
    if (n < 2) throw InvalidInput("threshold_scale: need n >= 2");
    return sigma * scale_pow2_half(-i_n) * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

namespace {

// Nearest-left fill at the target level, then one analysis transform.
CoefficientPyramid practical_pyramid(const Design& design, const Observations& obs,
                                     const WaveletSpec& spec, int target_level) {
    if (design.empty()) throw InvalidInput("estimate_practical: empty design");
    if (target_level <= spec.coarsest_level() || target_level > kMaxLevel)
        throw InvalidInput("estimate_practical: bad target level");
    const auto& keys = design.keys();
    if (keys.front() != 0)
        throw InvalidInput("estimate_practical: design must contain the point 0");

    const std::size_t count = std::size_t{1} << target_level;
    const std::uint64_t step = std::uint64_t{1} << (kMaxLevel - target_level);
    const double scale = scale_pow2_half(-target_level);
    std::vector<double> values(count);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t grid_key = static_cast<std::uint64_t>(k) * step;
        while (idx + 1 < keys.size() && keys[idx + 1] <= grid_key) ++idx;
        values[k] = scale * obs.at(DyadicPoint::from_key(keys[idx]));
    }
    return fwt_forward(values, spec);
}

}  // namespace

CoefficientSet estimate_practical(const Design& design, const Observations& obs,
                                  const WaveletSpec& spec, const EstimatorConfig&,
                                  int target_level) {
    CoefficientPyramid pyr = practical_pyramid(design, obs, spec, target_level);

    CoefficientSet out;
    out.coarsest = pyr.coarsest;
    out.top = pyr.top;
    out.alpha = std::move(pyr.scaling);
    out.beta = std::move(pyr.details);
    out.n_samples = design.size();
    out.i_n.resize(out.beta.size());
    for (int j = out.coarsest; j < out.top; ++j)
        out.i_n[static_cast<std::size_t>(j - out.coarsest)] = design.finest_embedded_levels(j, spec);
    return out;
}

namespace {

// Dense inner product of the synthesized basis vector for one coefficient
// against the level-i samples on its support.
double localized_coefficient(const Design& design, const Observations& obs,
                             const WaveletSpec& spec, int j, std::uint64_t k, int i,
                             bool detail) {
    CoefficientPyramid unit;
    unit.coarsest = spec.coarsest_level();
    unit.top = i;
    unit.scaling.assign(std::size_t{1} << unit.coarsest, 0.0);
    unit.details.resize(static_cast<std::size_t>(i - unit.coarsest));
    for (int l = unit.coarsest; l < i; ++l)
        unit.details[static_cast<std::size_t>(l - unit.coarsest)].assign(std::size_t{1} << l, 0.0);
    if (detail)
        unit.details[static_cast<std::size_t>(j - unit.coarsest)][k] = 1.0;
    else
        unit.scaling[k] = 1.0;
    const std::vector<double> basis = fwt_inverse(unit, spec);

    const SupportCells cells = support_cells(j, k, spec);
    const double scale = scale_pow2_half(-i);
    const std::uint64_t per_cell = std::uint64_t{1} << (i - j);
    double acc = 0.0;
    for (std::uint64_t t = 0; t < cells.count; ++t) {
        const std::uint64_t base = cells.cell(t) * per_cell;
        for (std::uint64_t s = 0; s < per_cell; ++s) {
            const std::uint64_t m = base + s;
            const double w = basis[m];
            if (w == 0.0) continue;
            const DyadicPoint x(m, i);
            if (!design.contains(x))
                throw InconsistentDesign("estimate_theoretical: grid point missing from design");
            acc += w * scale * obs.at(x);
        }
    }
    return acc;
}

}  // namespace

CoefficientSet estimate_theoretical(const Design& design, const Observations& obs,
                                    const WaveletSpec& spec, const EstimatorConfig&) {
    if (design.empty()) throw InvalidInput("estimate_theoretical: empty design");
    const int j0 = spec.coarsest_level();
    const int top = max_resolution_level(design.size(), j0);

    CoefficientSet out;
    out.coarsest = j0;
    out.top = top;
    out.n_samples = design.size();
    out.alpha.resize(std::size_t{1} << j0);
    for (std::uint64_t k = 0; k < out.alpha.size(); ++k) {
        const int i = design.finest_embedded_level(j0, k, spec);
        if (i == Design::undefined_level)
            throw InconsistentDesign("estimate_theoretical: no embedded grid for a scaling term");
        out.alpha[k] = localized_coefficient(design, obs, spec, j0, k, i, false);
    }
    out.beta.resize(static_cast<std::size_t>(top - j0));
    out.i_n.resize(out.beta.size());
    for (int j = j0; j < top; ++j) {
        const auto lvl = static_cast<std::size_t>(j - j0);
        out.i_n[lvl] = design.finest_embedded_levels(j, spec);
        out.beta[lvl].assign(std::size_t{1} << j, 0.0);
        for (std::uint64_t k = 0; k < out.beta[lvl].size(); ++k) {
            const int i = out.i_n[lvl][k];
            if (i == Design::undefined_level) continue;
            out.beta[lvl][k] = localized_coefficient(design, obs, spec, j, k, i, true);
        }
    }
    return out;
}

double estimate_sigma(const CoefficientSet& coeffs) {
    const int j_max = max_resolution_level(coeffs.n_samples, coeffs.coarsest);
    std::vector<double> cands;
    for (int j = std::max(coeffs.coarsest, j_max - 1); j < coeffs.top; ++j) {
        const auto lvl = static_cast<std::size_t>(j - coeffs.coarsest);
        for (std::uint64_t k = 0; k < coeffs.beta[lvl].size(); ++k) {
            const int i = coeffs.i_n[lvl][k];
            if (i == Design::undefined_level) continue;
            cands.push_back(scale_pow2_half(i) * std::abs(coeffs.beta[lvl][k]));
        }
    }
    if (cands.empty())
        throw EstimationUnavailable("estimate_sigma: no fine-scale coefficients available");
    return median_of(std::move(cands)) / kNormalThirdQuartile;
}

double estimate_sigma_at_scale(const Design& design, const Observations& obs,
                               const WaveletSpec& spec) {
    const int j0 = spec.coarsest_level();
    const int j_max = max_resolution_level(design.size(), j0);
    const int deepest = design.deepest_full_level(j_max);

    // resolution indices per level, grouped by their value
    std::vector<std::vector<int>> res;
    for (int j = std::max(j0, j_max - 1); j < deepest; ++j)
        res.push_back(design.finest_embedded_levels(j, spec));
    const int j_lo = std::max(j0, j_max - 1);

    std::vector<double> cands;
    for (int i = j_lo + 1; i <= deepest; ++i) {
        bool wanted = false;
        for (const auto& level : res)
            for (int v : level)
                if (v == i) {
                    wanted = true;
                    break;
                }
        if (!wanted) continue;
        const CoefficientPyramid at_i = practical_pyramid(design, obs, spec, i);
        const double up = scale_pow2_half(i);
        for (std::size_t lvl = 0; lvl < res.size(); ++lvl) {
            const int j = j_lo + static_cast<int>(lvl);
            const auto& level = at_i.details[static_cast<std::size_t>(j - at_i.coarsest)];
            for (std::uint64_t k = 0; k < res[lvl].size(); ++k)
                if (res[lvl][k] == i) cands.push_back(up * std::abs(level[k]));
        }
    }
    if (cands.empty())
        throw EstimationUnavailable("estimate_sigma_at_scale: no fine-scale coefficients");
    return median_of(std::move(cands)) / kNormalThirdQuartile;
}

CoefficientSet apply_threshold(const CoefficientSet& coeffs, const EstimatorConfig& config) {
    if (config.kappa < 0.0) throw InvalidInput("apply_threshold: kappa must be >= 0");
    CoefficientSet out = coeffs;
    out.sigma_used = config.sigma ? *config.sigma : estimate_sigma(coeffs);
    out.kappa_used = config.kappa;
    out.thresholded = true;
    out.surviving.resize(out.beta.size());
    for (std::size_t lvl = 0; lvl < out.beta.size(); ++lvl) {
        out.surviving[lvl].assign(out.beta[lvl].size(), 0);
        for (std::uint64_t k = 0; k < out.beta[lvl].size(); ++k) {
            const int i = out.i_n[lvl][k];
            if (i == Design::undefined_level) continue;
            const double e = threshold_scale(i, out.n_samples, out.sigma_used);
            out.surviving[lvl][k] = std::abs(out.beta[lvl][k]) >= config.kappa * e ? 1 : 0;
        }
    }
    return out;
}

std::vector<double> reconstruct(const CoefficientSet& coeffs, const WaveletSpec& spec,
                                int output_level) {
    if (!coeffs.thresholded) throw InvalidInput("reconstruct: apply_threshold first");
    if (output_level <= coeffs.coarsest || output_level > kMaxLevel)
        throw InvalidInput("reconstruct: bad output level");
    for (int j = output_level; j < coeffs.top; ++j) {
        const auto lvl = static_cast<std::size_t>(j - coeffs.coarsest);
        for (std::uint8_t s : coeffs.surviving[lvl])
            if (s)
                throw InvalidInput("reconstruct: surviving detail above the output level");
    }

    CoefficientPyramid pyr;
    pyr.coarsest = coeffs.coarsest;
    pyr.top = output_level;
    pyr.scaling = coeffs.alpha;
    pyr.details.resize(static_cast<std::size_t>(output_level - coeffs.coarsest));
    for (int j = coeffs.coarsest; j < output_level; ++j) {
        const auto lvl = static_cast<std::size_t>(j - coeffs.coarsest);
        auto& d = pyr.details[lvl];
        d.assign(std::size_t{1} << j, 0.0);
        if (j < coeffs.top)
            for (std::uint64_t k = 0; k < d.size(); ++k)
                d[k] = coeffs.beta_thresholded(j, k);
    }
    std::vector<double> values = fwt_inverse(pyr, spec);
    const double scale = scale_pow2_half(output_level);
    for (double& v : values) v *= scale;
    return values;
}

}  // namespace adawave
