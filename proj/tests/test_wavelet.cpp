#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "adawave/errors.hpp"
#include "adawave/wavelet.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adawave;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("filter invariants hold for every built-in family") {
    for (int n = 1; n <= 10; ++n) {
        const WaveletSpec spec = WaveletSpec::daubechies(n, 0);
        CHECK(spec.vanishing_moments() == n);
        CHECK(spec.half_support() == n);
        const auto& h = spec.lowpass();
        double sum = 0.0, norm = 0.0;
        for (double v : h) sum += v, norm += v * v;
        CHECK(std::abs(sum - std::numbers::sqrt2) < 1e-12);
        CHECK(std::abs(norm - 1.0) < 1e-12);
        for (std::size_t lag = 2; lag < h.size(); lag += 2) {
            double acc = 0.0;
            for (std::size_t m = 0; m + lag < h.size(); ++m) acc += h[m] * h[m + lag];
            CHECK(std::abs(acc) < 1e-12);
        }
    }
}

TEST_CASE("haar transform of a constant concentrates in the scaling term") {
    const WaveletSpec spec = WaveletSpec::haar(0);
    const std::vector<double> v{1.0, 1.0, 1.0, 1.0};
    const CoefficientPyramid pyr = fwt_forward(v, spec);
    CHECK(pyr.scaling.size() == 1);
    CHECK(pyr.scaling[0] == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& level : pyr.details)
        for (double d : level) CHECK(std::abs(d) < 1e-12);
}

TEST_CASE("parseval on a unit vector") {
    for (const WaveletSpec& spec :
         {WaveletSpec::haar(0), WaveletSpec::daubechies(4, 1), WaveletSpec::daubechies(8, 2)}) {
        std::vector<double> v(16, 0.0);
        v[0] = 1.0;
        const CoefficientPyramid pyr = fwt_forward(v, spec);
        CHECK(pyr.sum_squares() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("round trip and parseval on random vectors") {
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    for (int i = 6; i <= 14; i += 2) {
        const std::vector<double> v = random_vector(std::size_t{1} << i, 77u + i);
        const CoefficientPyramid pyr = fwt_forward(v, spec);
        const std::vector<double> back = fwt_inverse(pyr, spec);
        CHECK(max_abs_diff(v, back) < 1e-10);
        const double norm = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        CHECK(pyr.sum_squares() == doctest::Approx(norm).epsilon(1e-9));
    }
}

TEST_CASE("agreement with the dense-matrix transform") {
    struct Case {
        WaveletSpec spec;
        int top;
    };
    const Case cases[] = {
        {WaveletSpec::haar(0), 5},
        {WaveletSpec::daubechies(2, 1), 6},
        {WaveletSpec::daubechies(8, 5), 6},
    };
    for (const auto& c : cases) {
        const oracles::DenseTransform dense(c.spec, c.top);
        const std::vector<double> v = random_vector(std::size_t{1} << c.top, 2024);
        const auto fast = oracles::DenseTransform::flatten(fwt_forward(v, c.spec));
        const auto slow = dense.forward(v);
        CHECK(max_abs_diff(fast, slow) < 1e-9);
    }
}

TEST_CASE("single detail coefficient synthesizes the basis vector") {
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    const int top = 8;
    const oracles::DenseTransform dense(spec, top);
    CoefficientPyramid pyr;
    pyr.coarsest = 5;
    pyr.top = top;
    pyr.scaling.assign(32, 0.0);
    pyr.details = {std::vector<double>(32, 0.0), std::vector<double>(64, 0.0),
                   std::vector<double>(128, 0.0)};
    pyr.details[1][17] = 1.0;
    const std::vector<double> v = fwt_inverse(pyr, spec);
    const auto& basis = dense.basis(dense.row_of_beta(6, 17));
    CHECK(max_abs_diff(v, basis) < 1e-9);
}

TEST_CASE("vanishing moments annihilate interior polynomial samples") {
    for (int n : {2, 4, 8}) {
        const WaveletSpec spec = WaveletSpec::daubechies(n, 3);
        const int top = 10;
        const std::size_t count = std::size_t{1} << top;
        std::vector<double> v(count);
        double norm = 0.0;
        for (std::size_t m = 0; m < count; ++m) {
            const double x = static_cast<double>(m) / static_cast<double>(count);
            double p = 1.0, acc = 0.0;
            for (int d = 0; d < n; ++d) {
                acc += (d + 1.0) * p;
                p *= x;
            }
            v[m] = acc;
            norm = std::max(norm, std::abs(acc));
        }
        const CoefficientPyramid pyr = fwt_forward(v, spec);
        for (int j = pyr.coarsest; j < pyr.top; ++j) {
            const auto& level = pyr.details[static_cast<std::size_t>(j - pyr.coarsest)];
            for (std::uint64_t k = 0; k < level.size(); ++k) {
                const DyadicInterval s = support(j, k, spec);
                const std::int64_t lo_raw = static_cast<std::int64_t>(k) - spec.half_support() + 1;
                const bool interior =
                    lo_raw > 0 && static_cast<std::uint64_t>(k) + spec.half_support() <
                                      (std::uint64_t{1} << j);
                if (!interior) continue;
                CHECK(std::abs(level[k]) / norm < 1e-8);
                CHECK(!s.empty());
            }
        }
    }
}

TEST_CASE("support intervals match the clipped formula") {
    const WaveletSpec haar = WaveletSpec::haar(0);
    DyadicInterval s = support(2, 1, haar);
    CHECK(s.lo() == doctest::Approx(0.25));
    CHECK(s.hi() == doctest::Approx(0.5));

    const WaveletSpec db8 = WaveletSpec::daubechies(8, 5);
    s = support(5, 0, db8);
    CHECK(s.lo() == doctest::Approx(0.0));
    CHECK(s.hi() == doctest::Approx(8.0 / 32.0));
    s = support(5, 31, db8);
    CHECK(s.lo() == doctest::Approx(24.0 / 32.0));
    CHECK(s.hi() == doctest::Approx(1.0));

    CHECK_THROWS_AS(support(2, 4, haar), InvalidInput);
}

TEST_CASE("transform input validation") {
    const WaveletSpec spec = WaveletSpec::daubechies(2, 2);
    std::vector<double> bad(48, 0.0);
    CHECK_THROWS_AS(fwt_forward(bad, spec), InvalidInput);
    std::vector<double> tiny(4, 0.0);  // level 2 == coarsest level
    CHECK_THROWS_AS(fwt_forward(tiny, spec), InvalidInput);

    CoefficientPyramid pyr;
    pyr.coarsest = 2;
    pyr.top = 4;
    pyr.scaling.assign(4, 0.0);
    pyr.details = {std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};  // wrong length
    CHECK_THROWS_AS(fwt_inverse(pyr, spec), InvalidInput);
}

TEST_CASE("filter tables load from disk and behave like the built-in family") {
    const WaveletSpec builtin = WaveletSpec::daubechies(4, 2);
    const std::string path = "filter_table_test.txt";
    {
        std::ofstream out(path);
        out << "4 4\n";
        out.precision(17);
        for (double v : builtin.lowpass()) out << v << "\n";
    }
    const WaveletSpec loaded = WaveletSpec::from_filter_file(path, 2);
    CHECK(loaded.boundary_mode() == BoundaryMode::interval_filters);
    CHECK(loaded.vanishing_moments() == 4);
    const std::vector<double> v = random_vector(64, 5);
    const auto a = oracles::DenseTransform::flatten(fwt_forward(v, builtin));
    const auto b = oracles::DenseTransform::flatten(fwt_forward(v, loaded));
    CHECK(max_abs_diff(a, b) == 0.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(WaveletSpec::from_filter_file("does_not_exist.txt", 0), InvalidInput);
}
