#ifndef ADAWAVE_SIGNALS_HPP
#define ADAWAVE_SIGNALS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adawave/wavelet.hpp"

namespace adawave {

// The four classical spatially-inhomogeneous test signals, each rescaled so
// its sample standard deviation over the level-17 grid is 7.
enum class TestFunction { blocks, bumps, heavisine, doppler };

const char* test_function_name(TestFunction fn);
std::optional<TestFunction> parse_test_function(const std::string& name);

// Closed-form value before sd scaling; x must lie in [0, 1].
double eval_prescaled(TestFunction fn, double x);

// Multiplier making sd(f) = 7 on the level-17 grid (population sd).
double sd7_scale_factor(TestFunction fn);

double eval(TestFunction fn, double x);

// Scaled samples on the level-i grid 2^-i Z of [0, 1).
std::vector<double> sample_grid(TestFunction fn, int level);

// A finitely supported coefficient pyramid used by the function-class
// checkers: scaling values at `coarsest`, details for levels coarsest..depth-1.
struct FiniteExpansion {
    int coarsest = 0;
    int depth = 0;
    std::vector<double> alpha;
    std::vector<std::vector<double>> beta;

    double beta_at(int j, std::uint64_t k) const {
        return beta[static_cast<std::size_t>(j - coarsest)][k];
    }
};

// Besov B^r_{p,inf} seminorm of the available levels: the max over levels of
// 2^(j(r + 1/2 - 1/p)) times the level-wise l_p norm. p may be infinity.
double besov_seminorm(const FiniteExpansion& exp, double r, double p);

// Local Hoelder C^s seminorm over I: only coefficients whose support lies
// inside I count.
double holder_seminorm(const FiniteExpansion& exp, double s, const DyadicInterval& interval,
                       const WaveletSpec& spec);

struct DetectabilityReport {
    bool detectable = true;
    int depth_checked = 0;  // levels below this were examined
    // First (j, k) whose fine-scale coefficient has no qualifying parent.
    std::optional<std::pair<int, std::uint64_t>> violator;
};

// Checks the parent condition: every coefficient at level j >= ceil(j0/t)
// meeting I needs an ancestor at some level j' in [floor(tj), j) whose
// support strictly contains S(j,k) and whose size is at least
// (j'/j) 2^((j-j')(s+1/2)) |beta(j,k)|. Truncation makes this a
// necessary-condition check up to the expansion depth.
DetectabilityReport check_detectable(const FiniteExpansion& exp, double s, double t,
                                     const DyadicInterval& interval, const WaveletSpec& spec);

}  // namespace adawave

#endif
