#include "adawave/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>

#include "adawave/errors.hpp"
#include "adawave/rng.hpp"

namespace adawave {

const char* design_mode_name(DesignMode mode) {
    return mode == DesignMode::uniform ? "uniform" : "adaptive";
}

void ExperimentConfig::validate() const {
    if (replications < 1) throw InvalidInput("config: replications must be >= 1");
    if (sigma < 0.0) throw InvalidInput("config: sigma must be >= 0");
    if (!(kappa >= 0.0)) throw InvalidInput("config: kappa must be >= 0");
    if (!(lambda > 0.0)) throw InvalidInput("config: lambda must be > 0");
    if (jobs < 1) throw InvalidInput("config: jobs must be >= 1");
    if (n0 == 0 || (n0 & (n0 - 1)) != 0) throw InvalidInput("config: n0 must be a power of two");
    if (n_total < n0) throw InvalidInput("config: n below the initial stage size n0");
    if (design == DesignMode::uniform && (n_total & (n_total - 1)) != 0)
        throw InvalidInput("config: uniform designs need a power-of-two n");
    if (error_grid_level > kMaxLevel) throw InvalidInput("config: error grid level too deep");
    if (error_grid_level < max_resolution_level(n_total, coarsest_level))
        throw InvalidInput("config: error grid level below j_max(n)");
}

WaveletSpec ExperimentConfig::make_spec() const {
    if (filter_file) return WaveletSpec::from_filter_file(*filter_file, coarsest_level);
    return WaveletSpec::daubechies(vanishing_moments, coarsest_level);
}

StageSchedule ExperimentConfig::make_schedule() const {
    StageSchedule s;
    s.j = std::countr_zero(n0);
    s.tau = tau;
    return s;
}

EstimatorConfig ExperimentConfig::make_estimator() const {
    EstimatorConfig e;
    e.kappa = kappa;
    e.sigma = known_sigma;
    e.mode = EstimatorMode::practical;
    return e;
}

PointOracle make_noise_oracle(TestFunction fn, double sigma, std::uint64_t master_seed,
                              DesignMode mode, int replication) {
    const std::uint64_t stream =
        mix64(mix64(master_seed, static_cast<std::uint64_t>(mode) + 1),
              static_cast<std::uint64_t>(replication));
    return [fn, sigma, stream](const DyadicPoint& p) {
        double y = eval(fn, p.value());
        if (sigma > 0.0) y += sigma * normal_from_key(mix64(stream, p.key()));
        return y;
    };
}

double max_error(std::span<const double> estimate, TestFunction fn, int level) {
    if (estimate.size() != (std::size_t{1} << level))
        throw InvalidInput("max_error: estimate length does not match the grid level");
    const double h = std::ldexp(1.0, -level);
    double worst = 0.0;
    for (std::size_t k = 0; k < estimate.size(); ++k)
        worst = std::max(worst, std::abs(estimate[k] - eval(fn, static_cast<double>(k) * h)));
    return worst;
}

namespace {

DesignSummary summarize(const Design& design) {
    DesignSummary counts{};
    for (std::uint64_t key : design.keys())
        ++counts[key >> (kMaxLevel - kSummaryLevel)];
    return counts;
}

}  // namespace

RunResult run_uniform_baseline(const ExperimentConfig& config, int replication) {
    const auto start = std::chrono::steady_clock::now();
    const WaveletSpec spec = config.make_spec();
    const EstimatorConfig est = config.make_estimator();
    const PointOracle oracle =
        make_noise_oracle(config.function, config.sigma, config.master_seed, DesignMode::uniform,
                          replication);

    Design design = Design::uniform(config.n_total);
    Observations obs;
    for (const DyadicPoint& p : design.points()) obs.set(p, oracle(p));

    // The fixed-design reference pipeline: practical coefficients at the data
    // level, hard thresholds, and details kept only below j_max(n).
    EstimatorConfig scaled = est;
    if (!scaled.sigma) scaled.sigma = estimate_sigma_at_scale(design, obs, spec);
    const int data_level = std::countr_zero(config.n_total);
    CoefficientSet coeffs = apply_threshold(
        estimate_practical(design, obs, spec, scaled, data_level), scaled);
    const int j_max = max_resolution_level(design.size(), config.coarsest_level);
    for (int j = j_max; j < coeffs.top; ++j) {
        auto& level = coeffs.surviving[static_cast<std::size_t>(j - coeffs.coarsest)];
        std::fill(level.begin(), level.end(), 0);
    }
    const std::vector<double> fhat = reconstruct(coeffs, spec, config.error_grid_level);

    RunResult out;
    out.replication = replication;
    out.max_error = max_error(fhat, config.function, config.error_grid_level);
    out.sigma_hat = coeffs.sigma_used;
    out.n_points = design.size();
    out.cell_counts = summarize(design);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

RunResult run_adaptive(const ExperimentConfig& config, int replication) {
    const auto start = std::chrono::steady_clock::now();
    SensingConfig sensing{config.make_spec(), config.make_estimator(), config.lambda};
    const PointOracle oracle =
        make_noise_oracle(config.function, config.sigma, config.master_seed, DesignMode::adaptive,
                          replication);

    SensingResult run = run_sensing(oracle, config.make_schedule(), sensing, config.n_total);

    // Reconstruction at the error grid reuses the final stage's sigma: the
    // stage estimate observes and predicts at the same scale, where the
    // fine-level coefficient sizes are calibrated.
    EstimatorConfig final_est = sensing.estimator;
    if (!final_est.sigma) final_est.sigma = run.trajectory.back().sigma_hat;
    const CoefficientSet final_coeffs = apply_threshold(
        estimate_practical(run.design, run.observations, sensing.spec, final_est,
                           config.error_grid_level),
        final_est);
    const std::vector<double> fhat =
        reconstruct(final_coeffs, sensing.spec, config.error_grid_level);

    RunResult out;
    out.replication = replication;
    out.max_error = max_error(fhat, config.function, config.error_grid_level);
    out.sigma_hat = final_coeffs.sigma_used;
    out.n_points = run.design.size();
    out.cell_counts = summarize(run.design);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

RunResult run_once(const ExperimentConfig& config, int replication) {
    return config.design == DesignMode::uniform ? run_uniform_baseline(config, replication)
                                                : run_adaptive(config, replication);
}

std::vector<RunResult> replicate(const ExperimentConfig& config) {
    config.validate();
    std::vector<RunResult> results(static_cast<std::size_t>(config.replications));
    const int jobs = std::min(config.jobs, config.replications);
    if (jobs <= 1) {
        for (int r = 0; r < config.replications; ++r)
            results[static_cast<std::size_t>(r)] = run_once(config, r);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int r = next.fetch_add(1); r < config.replications; r = next.fetch_add(1))
                results[static_cast<std::size_t>(r)] = run_once(config, r);
        });
    for (auto& t : workers) t.join();
    return results;
}

ComparisonRow compare_designs(const ExperimentConfig& config, std::vector<RunResult>* uniform_runs,
                              std::vector<RunResult>* adaptive_runs) {
    ExperimentConfig uniform_cfg = config;
    uniform_cfg.design = DesignMode::uniform;
    ExperimentConfig adaptive_cfg = config;
    adaptive_cfg.design = DesignMode::adaptive;

    const std::vector<RunResult> uni = replicate(uniform_cfg);
    const std::vector<RunResult> ada = replicate(adaptive_cfg);

    std::vector<double> uni_err;
    std::vector<double> ada_err;
    uni_err.reserve(uni.size());
    ada_err.reserve(ada.size());
    for (const auto& r : uni) uni_err.push_back(r.max_error);
    for (const auto& r : ada) ada_err.push_back(r.max_error);

    ComparisonRow row;
    row.function = config.function;
    row.sigma = config.sigma;
    row.n = config.n_total;
    row.replications = config.replications;
    row.uniform = median_ci(uni_err);
    row.adaptive = median_ci(ada_err);
    row.p_value = mann_whitney_u(uni_err, ada_err);
    if (uniform_runs) *uniform_runs = std::move(uni);
    if (adaptive_runs) *adaptive_runs = std::move(ada);
    return row;
}

}  // namespace adawave
