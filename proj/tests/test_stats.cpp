#include <random>

#include "adawave/errors.hpp"
#include "adawave/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adawave;

TEST_CASE("median and order-statistic confidence interval") {
    std::vector<double> nine{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const MedianCi ci = median_ci(nine);
    CHECK(ci.median == 5.0);
    CHECK(!ci.degenerate);
    CHECK(ci.lo <= ci.median);
    CHECK(ci.hi >= ci.median);

    SUBCASE("endpoints verified against exact binomial tails") {
        std::mt19937_64 rng(55);
        for (std::size_t n : {6u, 9u, 25u, 50u, 101u, 250u}) {
            std::vector<double> v(n);
            std::normal_distribution<double> dist;
            for (double& x : v) x = dist(rng);
            const MedianCi c = median_ci(v);
            std::sort(v.begin(), v.end());
            // find d with lo = x_(d); coverage uses P(Bin < d) and symmetry
            std::size_t d = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (v[i] == c.lo) {
                    d = i + 1;
                    break;
                }
            CHECK(c.hi == v[n - d]);
            const double lower_tail = oracles::binomial_half_cdf_oracle(n, d - 1);
            CHECK(lower_tail <= 0.025 + 1e-15);
            // one step tighter would overshoot the tail budget
            if (d < (n + 1) / 2)
                CHECK(oracles::binomial_half_cdf_oracle(n, d) > 0.025);
            const double coverage = 1.0 - 2.0 * lower_tail;
            CHECK(coverage >= 0.95);
        }
    }
    SUBCASE("constant samples give a zero-width interval") {
        std::vector<double> v(20, 3.5);
        const MedianCi c = median_ci(v);
        CHECK(c.median == 3.5);
        CHECK(c.lo == 3.5);
        CHECK(c.hi == 3.5);
    }
    SUBCASE("small samples are flagged degenerate") {
        std::vector<double> v{1, 2, 3};
        const MedianCi c = median_ci(v);
        CHECK(c.degenerate);
        CHECK(c.median == 2.0);
        CHECK_THROWS_AS(median_ci(std::vector<double>{}), InvalidInput);
    }
}

TEST_CASE("mann-whitney exact small-sample values") {
    const std::vector<double> a{1, 2};
    const std::vector<double> b{3, 4};
    CHECK(mann_whitney_u(a, b) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));

    SUBCASE("identical samples give p = 1") {
        const std::vector<double> s{2.5, 2.5, 2.5, 2.5};
        CHECK(mann_whitney_u(s, s) == 1.0);
    }
    SUBCASE("two-sided symmetry under swapping") {
        std::mt19937_64 rng(17);
        std::normal_distribution<double> dist;
        for (int t = 0; t < 20; ++t) {
            std::vector<double> x(5), y(7);
            for (double& v : x) v = dist(rng);
            for (double& v : y) v = dist(rng);
            CHECK(mann_whitney_u(x, y) == doctest::Approx(mann_whitney_u(y, x)).epsilon(1e-15));
        }
    }
    SUBCASE("empty samples are rejected") {
        CHECK_THROWS_AS(mann_whitney_u(std::vector<double>{}, b), InvalidInput);
    }
}

TEST_CASE("exact mann-whitney agrees with the enumeration oracle") {
    std::mt19937_64 rng(4711);
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_int_distribution<int> value_dist(0, 6);  // forces ties
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> a(static_cast<std::size_t>(size_dist(rng)));
        std::vector<double> b(static_cast<std::size_t>(size_dist(rng)));
        for (double& v : a) v = value_dist(rng);
        for (double& v : b) v = value_dist(rng);
        CHECK(mann_whitney_u(a, b) ==
              doctest::Approx(oracles::enumerated_mwu(a, b)).epsilon(1e-13));
    }
}

TEST_CASE("asymptotic path is close to exact near the size threshold") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> dist;
    std::vector<double> a(10), b(10);
    for (double& v : a) v = dist(rng);
    for (double& v : b) v = dist(rng) + 0.8;
    const double exact = mann_whitney_u(a, b);  // pooled size 20: exact path
    std::vector<double> a2 = a, b2 = b;
    a2.push_back(dist(rng));  // pooled 21: asymptotic path
    const double approx = mann_whitney_u(a2, b2);
    CHECK(std::abs(exact - approx) < 0.08);
}
