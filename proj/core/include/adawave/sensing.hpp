#ifndef ADAWAVE_SENSING_HPP
#define ADAWAVE_SENSING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "adawave/design.hpp"
#include "adawave/estimator.hpp"

namespace adawave {

// Stage sizes n_m = floor(2^(j + tau m)); n_0 = 2^j is a power of two and the
// stage ratios stay bounded away from 1 and infinity.
struct StageSchedule {
    int j = 6;
    double tau = 0.5;

    std::size_t n0() const { return std::size_t{1} << j; }
    std::size_t n(int m) const;
    void validate() const;
};

// Piecewise-constant target density on the level-jp partition. p_l equals
// normalizer * raw_l where raw_l is the max expression before normalization;
// the normalizer makes the density integrate to exactly one. Greedy cell
// selection only ever compares raw_l / 2^level, so it never needs it.
struct TargetDensity {
    int partition_level = 0;
    std::vector<double> raw;
    double normalizer = 1.0;
    double lambda = 0.0;

    double p(std::size_t l) const { return normalizer * raw[l]; }
    double integral() const {
        double acc = 0.0;
        for (double v : raw) acc += v;
        return normalizer * std::ldexp(acc, -partition_level);
    }
};

// Ranks the thresholded magnitudes at level j in decreasing order, ties by
// ascending k; returns the 1-based rank of each k.
std::vector<std::uint32_t> rank_coefficients(const CoefficientSet& coeffs, int j);

// Target density of the next stage: on each partition cell the max of lambda
// and 2^j / (rank * rank_top^2) over surviving coefficients of levels
// [coarsest, rank_top) whose support covers the cell, scaled to integrate to
// one. rank_top is the previous stage's maximum resolution level.
TargetDensity target_density(const CoefficientSet& coeffs, int partition_level, int rank_top,
                             double lambda, const WaveletSpec& spec);

struct RefinementStep {
    std::uint64_t cell = 0;
    int grid_level = 0;
    std::size_t added = 0;
    bool completed = false;  // the whole missing grid fitted in the budget
};

struct StageDiagnostics {
    int stage = 0;
    std::size_t n_target = 0;
    std::size_t n_reached = 0;
    std::size_t mandatory_added = 0;
    std::vector<RefinementStep> refinements;
    bool halving_ok = true;       // completed batches doubled the cell's grid density
    bool greedy_monotone = true;  // selection keys never increased
    double max_discrepancy = 0.0;  // final max_l p_l / q_l
    double min_q_over_p = 0.0;     // final min_l q_l / p_l
};

// One stage of design growth: first inserts the missing partition-grid
// points, then repeatedly refines the cell maximising p_l / q_l (ties to the
// smallest index) by the coarsest grid with a missing point, truncating the
// final batch so the design holds exactly n_target points. Appends every new
// point to new_points when given.
StageDiagnostics select_stage_points(Design& design, const TargetDensity& density,
                                     std::size_t n_target,
                                     std::vector<DyadicPoint>* new_points = nullptr);

struct SensingConfig {
    WaveletSpec spec;
    EstimatorConfig estimator;
    double lambda = 0.5;
    bool record_coefficients = false;
    bool record_designs = false;
};

struct StageRecord {
    int stage = 0;
    std::size_t n = 0;
    int j_max = 0;
    double sigma_hat = 0.0;
    std::optional<CoefficientSet> coefficients;
    std::optional<std::vector<DyadicPoint>> design_points;
    StageDiagnostics diagnostics;
};

struct SensingResult {
    Design design;
    Observations observations;
    std::vector<StageRecord> trajectory;
};

using PointOracle = std::function<double(const DyadicPoint&)>;

// The full sensing loop: uniform initial stage, then per stage estimate,
// re-estimate sigma, rank, build the target density, grow the design and
// observe the new points. Stops once the design holds n_total points; the
// last stage is clipped to the global budget.
SensingResult run_sensing(const PointOracle& oracle, const StageSchedule& schedule,
                          const SensingConfig& config, std::size_t n_total);

}  // namespace adawave

#endif
