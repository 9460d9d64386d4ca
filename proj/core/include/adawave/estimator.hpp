#ifndef ADAWAVE_ESTIMATOR_HPP
#define ADAWAVE_ESTIMATOR_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "adawave/design.hpp"
#include "adawave/wavelet.hpp"

namespace adawave {

enum class EstimatorMode {
    theoretical,  // per-coefficient estimates at their own resolution i_n(j,k)
    practical,    // nearest-left fill at the prediction level, then one transform
};

struct EstimatorConfig {
    double kappa = 1.0;
    std::optional<double> sigma;  // nullopt: estimate from fine-scale coefficients
    EstimatorMode mode = EstimatorMode::practical;
};

// Maximum resolution level j_max(n) = max(j0 + 1, floor(log2(n / ln n))).
int max_resolution_level(std::size_t n, int coarsest_level);

// Estimated coefficients with their resolution indices and threshold flags.
// i_n entries use Design::undefined_level where no embedded grid exists.
struct CoefficientSet {
    int coarsest = 0;
    int top = 0;
    std::vector<double> alpha;                         // level coarsest
    std::vector<std::vector<double>> beta;             // levels coarsest .. top-1
    std::vector<std::vector<int>> i_n;                 // aligned with beta
    std::vector<std::vector<std::uint8_t>> surviving;  // filled by apply_threshold
    bool thresholded = false;
    std::size_t n_samples = 0;
    double sigma_used = std::numeric_limits<double>::quiet_NaN();
    double kappa_used = std::numeric_limits<double>::quiet_NaN();

    std::size_t level_size(int j) const { return std::size_t{1} << j; }
    double beta_value(int j, std::uint64_t k) const {
        return beta[static_cast<std::size_t>(j - coarsest)][k];
    }
    // Hard-thresholded value: zero unless the coefficient survived.
    double beta_thresholded(int j, std::uint64_t k) const {
        const auto lvl = static_cast<std::size_t>(j - coarsest);
        return surviving[lvl][k] ? beta[lvl][k] : 0.0;
    }
};

// Threshold scale e_n = sigma * 2^(-i_n/2) * sqrt(2 ln n).
double threshold_scale(int i_n, std::size_t n, double sigma);

// Practical estimator: scaling values at target_level are filled from the
// nearest design point at or left of each grid point, then transformed.
// Resolution indices i_n are recorded for thresholding.
CoefficientSet estimate_practical(const Design& design, const Observations& obs,
                                  const WaveletSpec& spec, const EstimatorConfig& config,
                                  int target_level);

// Per-coefficient estimator: each (j, k) uses the finest grid embedded in its
// support, evaluated as a dense inner product against the synthesized basis
// vector. Slow but exact; used as the reference pipeline.
CoefficientSet estimate_theoretical(const Design& design, const Observations& obs,
                                    const WaveletSpec& spec, const EstimatorConfig& config);

// sigma_hat = median{2^(i_n/2) |beta(j,k)| : j >= j_max - 1, i_n defined} / 0.6745.
double estimate_sigma(const CoefficientSet& coeffs);

// Same median rule, but every candidate coefficient is evaluated at its own
// resolution index i_n(j,k), where its variance is exactly sigma^2 2^(-i_n).
// One transform per distinct resolution level present in the design.
double estimate_sigma_at_scale(const Design& design, const Observations& obs,
                               const WaveletSpec& spec);

// Hard thresholding at kappa * e_n(j,k); coefficients with undefined i_n are
// zeroed; scaling coefficients are never thresholded.
CoefficientSet apply_threshold(const CoefficientSet& coeffs, const EstimatorConfig& config);

// Values of the estimate on the level-i grid: 2^(i/2) times the inverse
// transform of the thresholded pyramid zero-padded to output_level.
std::vector<double> reconstruct(const CoefficientSet& coeffs, const WaveletSpec& spec,
                                int output_level);

}  // namespace adawave

#endif
