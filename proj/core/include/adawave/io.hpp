#ifndef ADAWAVE_IO_HPP
#define ADAWAVE_IO_HPP

#include <string>
#include <vector>

#include "adawave/harness.hpp"

namespace adawave {

// Shortest round-trippable decimal form; locale-independent.
std::string format_double(double v);

// Writes to a temporary sibling then renames, so readers never see a partial
// file.
void atomic_write_file(const std::string& path, const std::string& content);

// Design dump: `numerator,level` per point, canonical form.
std::string design_csv(const Design& design);

// Coefficient dump: `j,k,i_n,beta_hat,surviving`; undefined i_n prints -1.
std::string coefficients_csv(const CoefficientSet& coeffs);

// Trajectory dump: `stage,n,j_max,sigma_hat` per stage boundary.
std::string trajectory_csv(const std::vector<StageRecord>& trajectory);

// Per-replication results: `function,sigma,design,rep,max_error,sigma_hat,seconds`.
std::string results_csv(const ExperimentConfig& config, const std::vector<RunResult>& runs);

// Comparison report rows plus 95% CIs and the two-sided MWU p-value.
std::string report_csv(const std::vector<ComparisonRow>& rows);

struct SweepRow {
    TestFunction function = TestFunction::doppler;
    double sigma = 1.0;
    std::size_t n = 0;
    DesignMode design = DesignMode::uniform;
    int replications = 0;
    MedianCi ci;
    double p_value = 1.0;  // pairs with the other arm at the same n
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

// `x,f(x)` on the level-i grid.
std::string function_csv(TestFunction fn, int level);

}  // namespace adawave

#endif
