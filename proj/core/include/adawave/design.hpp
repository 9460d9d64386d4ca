#ifndef ADAWAVE_DESIGN_HPP
#define ADAWAVE_DESIGN_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "adawave/dyadic.hpp"
#include "adawave/wavelet.hpp"

namespace adawave {

// Piecewise-constant density implied by the finest fully-present grid in each
// cell of the level-j partition: q_l = 2^i / n for the largest embedded i.
struct EffectiveDensity {
    int partition_level = 0;
    std::vector<double> values;
    std::size_t n = 0;

    double integral() const {
        double acc = 0.0;
        for (double v : values) acc += v;
        return std::ldexp(acc, -partition_level);
    }
};

// The set of design points, stored as canonical numerators on the level-40
// grid. All membership and ordering tests are exact integer operations.
// Mutations rebuild the sorted key vector, so concurrent read-only queries
// between mutations are safe.
class Design {
public:
    static constexpr int undefined_level = -1;

    // Uniform initial design {(i-1)/n0 : 1 <= i <= n0}; n0 must be a power of two.
    static Design uniform(std::size_t n0);

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    bool contains(const DyadicPoint& p) const;

    // Inserts 2^-grid_level Z intersected with the given partition cell.
    // Returns the number of points actually added; repeating adds zero.
    std::size_t insert_grid(int partition_level, std::uint64_t cell, int grid_level);
    bool insert_point(const DyadicPoint& p);
    std::size_t insert_points(std::span<const DyadicPoint> pts);

    // Largest design point <= x. The initial stage guarantees 0 is present.
    DyadicPoint nearest_left(const DyadicPoint& x) const;

    // Sorted canonical keys (numerators at kMaxLevel).
    const std::vector<std::uint64_t>& keys() const { return keys_; }
    std::vector<DyadicPoint> points() const;

    // Largest i <= cap with 2^-i Z within the cell fully present, or
    // partition_level - 1 when even the cell's left endpoint is absent.
    int cell_full_level(int partition_level, std::uint64_t cell, int cap) const;
    std::vector<int> cell_full_levels(int partition_level, int cap) const;

    EffectiveDensity effective_density(int partition_level) const;

    // i_n(j, k): largest i in (j, refinement_cap()] whose grid inside the
    // support of basis function (j, k) lies in the design; undefined_level
    // when no such i exists.
    int finest_embedded_level(int j, std::uint64_t k, const WaveletSpec& spec) const;
    // Same for every k at level j at once.
    std::vector<int> finest_embedded_levels(int j, const WaveletSpec& spec) const;

    // Cap i_max on the grid search, 2^i_max = n^2.
    int refinement_cap() const;

    // Deepest fully-present grid level of any partition cell, capped at
    // refinement_cap(); estimates past this level carry no data.
    int deepest_full_level(int partition_level) const;

private:
    std::size_t merge_keys(std::vector<std::uint64_t> candidates);

    std::vector<std::uint64_t> keys_;
};

// Observed values keyed by design point.
class Observations {
public:
    void set(const DyadicPoint& p, double y) { map_[p.key()] = y; }
    bool has(const DyadicPoint& p) const { return map_.contains(p.key()); }
    double at(const DyadicPoint& p) const;
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::uint64_t, double> map_;
};

}  // namespace adawave

#endif
