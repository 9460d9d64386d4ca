#include "adawave/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "adawave/errors.hpp"

namespace adawave {

std::size_t StageSchedule::n(int m) const {
    if (m < 0) throw InvalidInput("stage index must be >= 0");
    return static_cast<std::size_t>(std::floor(std::exp2(j + tau * m)));
}

void StageSchedule::validate() const {
    if (j < 1 || j > 30) throw InvalidInput("schedule: j must be in [1, 30]");
    if (!(tau > 0.0) || tau > 8.0) throw InvalidInput("schedule: tau must be in (0, 8]");
}

std::vector<std::uint32_t> rank_coefficients(const CoefficientSet& coeffs, int j) {
    if (!coeffs.thresholded)
        throw InvalidInput("rank_coefficients: thresholded estimates required");
    if (j < coeffs.coarsest || j >= coeffs.top)
        throw InvalidInput("rank_coefficients: level out of range");
    const std::size_t count = coeffs.level_size(j);
    std::vector<std::uint64_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        const double ma = std::abs(coeffs.beta_thresholded(j, a));
        const double mb = std::abs(coeffs.beta_thresholded(j, b));
        if (ma != mb) return ma > mb;
        return a < b;
    });
    std::vector<std::uint32_t> rank(count);
    for (std::size_t pos = 0; pos < count; ++pos)
        rank[order[pos]] = static_cast<std::uint32_t>(pos + 1);
    return rank;
}

TargetDensity target_density(const CoefficientSet& coeffs, int partition_level, int rank_top,
                             double lambda, const WaveletSpec& spec) {
    if (!(lambda > 0.0)) throw InvalidInput("target_density: lambda must be positive");
    if (partition_level < 0 || partition_level > kMaxLevel)
        throw InvalidInput("target_density: bad partition level");
    if (rank_top <= coeffs.coarsest || rank_top > coeffs.top)
        throw InvalidInput("target_density: rank window out of range");

    TargetDensity out;
    out.partition_level = partition_level;
    out.lambda = lambda;
    out.raw.assign(std::size_t{1} << partition_level, lambda);

    // Cells are lifted over the wrapped support of the periodized basis
    // function, matching the footprint used by the grid-membership tests:
    // wrap coefficients can only sharpen their i_n if both arcs get data.
    const double top_sq = static_cast<double>(rank_top) * static_cast<double>(rank_top);
    for (int j = coeffs.coarsest; j < rank_top && j <= partition_level; ++j) {
        const std::vector<std::uint32_t> ranks = rank_coefficients(coeffs, j);
        const std::uint64_t expand = std::uint64_t{1} << (partition_level - j);
        for (std::uint64_t k = 0; k < coeffs.level_size(j); ++k) {
            if (coeffs.beta_thresholded(j, k) == 0.0) continue;
            const double value = std::exp2(j) / (static_cast<double>(ranks[k]) * top_sq);
            if (value <= lambda) continue;
            const SupportCells cells = support_cells(j, static_cast<std::uint64_t>(k), spec);
            for (std::uint64_t t = 0; t < cells.count; ++t) {
                const std::uint64_t base = cells.cell(t) * expand;
                for (std::uint64_t s = 0; s < expand; ++s)
                    out.raw[base + s] = std::max(out.raw[base + s], value);
            }
        }
    }

    double acc = 0.0;
    for (double v : out.raw) acc += v;
    out.normalizer = 1.0 / std::ldexp(acc, -partition_level);
    return out;
}

namespace {

struct CellKey {
    double key;  // raw_l / 2^level, proportional to p_l / (n q_l)
    std::uint64_t cell;
    int level;  // cell level when pushed; stale entries are re-keyed on pop

    bool operator<(const CellKey& other) const {
        if (key != other.key) return key < other.key;   // max-heap on key
        return cell > other.cell;                       // ties: smallest cell first
    }
};

}  // namespace

StageDiagnostics select_stage_points(Design& design, const TargetDensity& density,
                                     std::size_t n_target,
                                     std::vector<DyadicPoint>* new_points) {
    const int jp = density.partition_level;
    const std::uint64_t cells = std::uint64_t{1} << jp;
    StageDiagnostics diag;
    diag.n_target = n_target;

    // Mandatory step: all partition-grid points enter the design first.
    std::size_t missing = 0;
    for (std::uint64_t c = 0; c < cells; ++c)
        if (!design.contains(DyadicPoint(c, jp))) ++missing;
    if (design.size() + missing > n_target)
        throw ScheduleInfeasible("stage budget below the mandatory partition grid");
    if (missing > 0) {
        std::vector<DyadicPoint> grid;
        grid.reserve(missing);
        for (std::uint64_t c = 0; c < cells; ++c) {
            const DyadicPoint p(c, jp);
            if (!design.contains(p)) grid.push_back(p);
        }
        design.insert_points(grid);
        diag.mandatory_added = grid.size();
        if (new_points) new_points->insert(new_points->end(), grid.begin(), grid.end());
    }

    std::vector<int> level(cells);
    for (std::uint64_t c = 0; c < cells; ++c)
        level[c] = design.cell_full_level(jp, c, kMaxLevel);

    std::priority_queue<CellKey> queue;
    for (std::uint64_t c = 0; c < cells; ++c)
        queue.push({density.raw[c] * std::exp2(-level[c]), c, level[c]});

    double last_key = std::numeric_limits<double>::infinity();
    std::vector<DyadicPoint> batch;
    while (design.size() < n_target) {
        if (queue.empty())
            throw ScheduleInfeasible("no refinable cell left below the level cap");
        CellKey top = queue.top();
        queue.pop();
        if (top.level != level[top.cell]) {
            top.level = level[top.cell];
            top.key = density.raw[top.cell] * std::exp2(-top.level);
            queue.push(top);
            continue;
        }
        if (top.level + 1 > kMaxLevel) continue;  // cell refined to the cap, drop it

        if (top.key > last_key) diag.greedy_monotone = false;
        last_key = top.key;

        // S = missing points of the coarsest incomplete grid in the cell; the
        // mandatory step guarantees level >= jp, so only odd numerators at
        // level + 1 can be absent.
        const int next = top.level + 1;
        batch.clear();
        const std::uint64_t odd = std::uint64_t{1} << (next - jp - 1);
        for (std::uint64_t t = 0; t < odd; ++t) {
            const std::uint64_t num = top.cell * (std::uint64_t{1} << (next - jp)) + 2 * t + 1;
            const DyadicPoint p(num, next);
            if (!design.contains(p)) batch.push_back(p);
        }
        const std::size_t room = n_target - design.size();
        const bool completed = batch.size() <= room;
        if (!completed) batch.resize(room);
        design.insert_points(batch);
        if (new_points) new_points->insert(new_points->end(), batch.begin(), batch.end());

        RefinementStep step{top.cell, next, batch.size(), completed};
        diag.refinements.push_back(step);
        if (completed) {
            const int fresh = design.cell_full_level(jp, top.cell, kMaxLevel);
            if (fresh != top.level + 1) diag.halving_ok = false;
            level[top.cell] = fresh;
            queue.push({density.raw[top.cell] * std::exp2(-fresh), top.cell, fresh});
        }
    }

    diag.n_reached = design.size();
    const EffectiveDensity q = design.effective_density(jp);
    double max_disc = 0.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::uint64_t c = 0; c < cells; ++c) {
        const double p = density.p(c);
        max_disc = std::max(max_disc, p / q.values[c]);
        min_ratio = std::min(min_ratio, q.values[c] / p);
    }
    diag.max_discrepancy = max_disc;
    diag.min_q_over_p = min_ratio;
    return diag;
}

namespace {

// Stage estimates extend to every level with available data, so thresholds
// act on the fine scales of refined regions too. Sigma is re-estimated from
// coefficients taken at their own resolution indices, where the noise scale
// is exact; the staircase fill of the prediction-level pyramid would bias
// the median low.
CoefficientSet stage_estimate(const Design& design, const Observations& obs,
                              const SensingConfig& config) {
    const int j_max = max_resolution_level(design.size(), config.spec.coarsest_level());
    const int target = std::max(j_max, design.deepest_full_level(j_max));
    const CoefficientSet raw =
        config.estimator.mode == EstimatorMode::theoretical
            ? estimate_theoretical(design, obs, config.spec, config.estimator)
            : estimate_practical(design, obs, config.spec, config.estimator, target);
    EstimatorConfig est = config.estimator;
    if (!est.sigma) est.sigma = estimate_sigma_at_scale(design, obs, config.spec);
    return apply_threshold(raw, est);
}

void record_stage(std::vector<StageRecord>& trajectory, int stage, const Design& design,
                  const CoefficientSet& coeffs, const SensingConfig& config,
                  StageDiagnostics diag) {
    StageRecord rec;
    rec.stage = stage;
    rec.n = design.size();
    rec.j_max = max_resolution_level(design.size(), config.spec.coarsest_level());
    rec.sigma_hat = coeffs.sigma_used;
    rec.diagnostics = std::move(diag);
    if (config.record_coefficients) rec.coefficients = coeffs;
    if (config.record_designs) rec.design_points = design.points();
    trajectory.push_back(std::move(rec));
}

}  // namespace

SensingResult run_sensing(const PointOracle& oracle, const StageSchedule& schedule,
                          const SensingConfig& config, std::size_t n_total) {
    schedule.validate();
    if (n_total < schedule.n0())
        throw InvalidInput("run_sensing: budget below the initial stage size");

    SensingResult result;
    result.design = Design::uniform(schedule.n0());
    for (const DyadicPoint& p : result.design.points())
        result.observations.set(p, oracle(p));

    const int j0 = config.spec.coarsest_level();
    CoefficientSet coeffs = stage_estimate(result.design, result.observations, config);
    record_stage(result.trajectory, 0, result.design, coeffs, config, {});

    int m = 1;
    while (result.design.size() < n_total) {
        const std::size_t target = std::min(schedule.n(m), n_total);
        if (target <= result.design.size())
            throw ScheduleInfeasible("stage " + std::to_string(m) + " adds no design points");
        const int jp = max_resolution_level(target, j0);
        const int rank_top = max_resolution_level(result.design.size(), j0);
        const TargetDensity density =
            target_density(coeffs, jp, rank_top, config.lambda, config.spec);

        std::vector<DyadicPoint> fresh;
        StageDiagnostics diag = select_stage_points(result.design, density, target, &fresh);
        diag.stage = m;
        for (const DyadicPoint& p : fresh) result.observations.set(p, oracle(p));

        coeffs = stage_estimate(result.design, result.observations, config);
        record_stage(result.trajectory, m, result.design, coeffs, config, std::move(diag));
        ++m;
    }
    return result;
}

}  // namespace adawave
