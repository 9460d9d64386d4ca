#ifndef ADAWAVE_HARNESS_HPP
#define ADAWAVE_HARNESS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <optional>
#include <vector>

#include "adawave/sensing.hpp"
#include "adawave/signals.hpp"
#include "adawave/stats.hpp"

namespace adawave {

enum class DesignMode { uniform, adaptive };

const char* design_mode_name(DesignMode mode);

struct ExperimentConfig {
    TestFunction function = TestFunction::doppler;
    double sigma = 1.0;
    std::size_t n_total = std::size_t{1} << 14;
    DesignMode design = DesignMode::adaptive;
    int replications = 250;
    std::uint64_t master_seed = 0;
    int error_grid_level = 17;
    int jobs = 1;

    double kappa = 1.0;
    double lambda = 0.5;
    double tau = 0.5;
    std::size_t n0 = 64;
    int vanishing_moments = 8;
    int coarsest_level = 5;
    std::optional<double> known_sigma;  // bypass sigma_hat when set
    std::optional<std::string> filter_file;

    void validate() const;
    WaveletSpec make_spec() const;
    StageSchedule make_schedule() const;
    EstimatorConfig make_estimator() const;
};

// Level-4 occupancy summary of a final design.
constexpr int kSummaryLevel = 4;
using DesignSummary = std::array<std::size_t, std::size_t{1} << kSummaryLevel>;

struct RunResult {
    int replication = 0;
    double max_error = 0.0;
    double sigma_hat = 0.0;
    double seconds = 0.0;
    std::size_t n_points = 0;
    DesignSummary cell_counts{};
};

// Deterministic noisy point oracle: f(x) plus N(0, sigma^2) keyed by
// (master seed, design mode, replication, point), so draws are independent
// across replications and arms and independent of evaluation order.
PointOracle make_noise_oracle(TestFunction fn, double sigma, std::uint64_t master_seed,
                              DesignMode mode, int replication);

// max over the level-j grid of |f_hat - f|.
double max_error(std::span<const double> estimate, TestFunction fn, int level);

RunResult run_uniform_baseline(const ExperimentConfig& config, int replication);
RunResult run_adaptive(const ExperimentConfig& config, int replication);
RunResult run_once(const ExperimentConfig& config, int replication);

// R independent replications with per-replication seeds derived from the
// master seed; results are ordered by replication id regardless of the jobs
// setting.
std::vector<RunResult> replicate(const ExperimentConfig& config);

struct ComparisonRow {
    TestFunction function = TestFunction::doppler;
    double sigma = 1.0;
    std::size_t n = 0;
    int replications = 0;
    MedianCi uniform;
    MedianCi adaptive;
    double p_value = 1.0;
};

// Runs both arms of one configuration and summarises the medians.
ComparisonRow compare_designs(const ExperimentConfig& config,
                              std::vector<RunResult>* uniform_runs = nullptr,
                              std::vector<RunResult>* adaptive_runs = nullptr);

}  // namespace adawave

#endif
