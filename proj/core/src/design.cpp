#include "adawave/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "adawave/errors.hpp"

namespace adawave {

namespace {

// Minimum over every circular window of the given width; out[s] is the
// minimum of values[s .. s+width-1 mod n]. Monotonic deque over the doubled
// index range.
std::vector<int> circular_window_min(const std::vector<int>& values, std::size_t width) {
    const std::size_t n = values.size();
    std::vector<int> out(n);
    if (width >= n) {
        const int m = *std::min_element(values.begin(), values.end());
        std::fill(out.begin(), out.end(), m);
        return out;
    }
    std::vector<std::size_t> deque(2 * n);
    std::size_t head = 0, tail = 0;
    for (std::size_t t = 0; t < n + width - 1; ++t) {
        const std::size_t idx = t % n;
        while (tail > head && values[deque[tail - 1] % n] >= values[idx]) --tail;
        deque[tail++] = t;
        if (deque[head] + width <= t) ++head;
        if (t + 1 >= width) out[(t + 1 - width) % n] = values[deque[head] % n];
    }
    return out;
}

}  // namespace

Design Design::uniform(std::size_t n0) {
    if (n0 == 0 || (n0 & (n0 - 1)) != 0)
        throw InvalidInput("uniform design size must be a power of two");
    Design d;
    d.insert_grid(0, 0, std::countr_zero(n0));
    return d;
}

bool Design::contains(const DyadicPoint& p) const {
    return std::binary_search(keys_.begin(), keys_.end(), p.key());
}

std::size_t Design::merge_keys(std::vector<std::uint64_t> candidates) {
    std::erase_if(candidates, [this](std::uint64_t k) {
        return std::binary_search(keys_.begin(), keys_.end(), k);
    });
    if (candidates.empty()) return 0;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    const std::size_t added = candidates.size();
    const std::size_t mid = keys_.size();
    keys_.insert(keys_.end(), candidates.begin(), candidates.end());
    std::inplace_merge(keys_.begin(), keys_.begin() + static_cast<std::ptrdiff_t>(mid),
                       keys_.end());
    return added;
}

std::size_t Design::insert_grid(int partition_level, std::uint64_t cell, int grid_level) {
    if (partition_level < 0 || partition_level > kMaxLevel)
        throw InvalidInput("insert_grid: partition level out of range");
    if (grid_level < partition_level || grid_level > kMaxLevel)
        throw InvalidInput("insert_grid: grid level must be >= partition level");
    if (cell >= (std::uint64_t{1} << partition_level))
        throw InvalidInput("insert_grid: cell index out of range");
    const std::uint64_t count = std::uint64_t{1} << (grid_level - partition_level);
    const std::uint64_t base = cell << (kMaxLevel - partition_level);
    const std::uint64_t step = std::uint64_t{1} << (kMaxLevel - grid_level);
    std::vector<std::uint64_t> candidates;
    candidates.reserve(count);
    for (std::uint64_t t = 0; t < count; ++t) candidates.push_back(base + t * step);
    return merge_keys(std::move(candidates));
}

bool Design::insert_point(const DyadicPoint& p) { return merge_keys({p.key()}) == 1; }

std::size_t Design::insert_points(std::span<const DyadicPoint> pts) {
    std::vector<std::uint64_t> candidates;
    candidates.reserve(pts.size());
    for (const auto& p : pts) candidates.push_back(p.key());
    return merge_keys(std::move(candidates));
}

DyadicPoint Design::nearest_left(const DyadicPoint& x) const {
    auto it = std::upper_bound(keys_.begin(), keys_.end(), x.key());
    if (it == keys_.begin()) throw InvalidInput("nearest_left: no design point at or below x");
    return DyadicPoint::from_key(*(it - 1));
}

std::vector<DyadicPoint> Design::points() const {
    std::vector<DyadicPoint> out;
    out.reserve(keys_.size());
    for (std::uint64_t k : keys_) out.push_back(DyadicPoint::from_key(k));
    return out;
}

int Design::cell_full_level(int partition_level, std::uint64_t cell, int cap) const {
    if (partition_level < 0 || partition_level > kMaxLevel)
        throw InvalidInput("cell_full_level: partition level out of range");
    if (cell >= (std::uint64_t{1} << partition_level))
        throw InvalidInput("cell_full_level: cell index out of range");
    cap = std::min(cap, kMaxLevel);

    const std::uint64_t lo = cell << (kMaxLevel - partition_level);
    const std::uint64_t hi = (cell + 1) << (kMaxLevel - partition_level);
    const auto first = std::lower_bound(keys_.begin(), keys_.end(), lo);
    const auto last = std::lower_bound(first, keys_.end(), hi);
    const std::uint64_t present = static_cast<std::uint64_t>(last - first);
    if (present == 0 || *first != lo) return partition_level - 1;

    // A full level-i grid needs 2^(i - partition_level) points in the cell.
    const int count_cap = partition_level + (63 - std::countl_zero(present));
    cap = std::min(cap, count_cap);

    int level = partition_level;
    for (int i = partition_level + 1; i <= cap; ++i) {
        const std::uint64_t step = std::uint64_t{1} << (kMaxLevel - i);
        const std::uint64_t odd = std::uint64_t{1} << (i - partition_level - 1);
        bool full = true;
        for (std::uint64_t t = 0; t < odd; ++t) {
            const std::uint64_t key = lo + (2 * t + 1) * step;
            if (!std::binary_search(first, last, key)) {
                full = false;
                break;
            }
        }
        if (!full) break;
        level = i;
    }
    return level;
}

std::vector<int> Design::cell_full_levels(int partition_level, int cap) const {
    const std::uint64_t cells = std::uint64_t{1} << partition_level;
    std::vector<int> out(cells);
    for (std::uint64_t c = 0; c < cells; ++c)
        out[c] = cell_full_level(partition_level, c, cap);
    return out;
}

EffectiveDensity Design::effective_density(int partition_level) const {
    if (empty()) throw InvalidInput("effective_density: design is empty");
    EffectiveDensity out;
    out.partition_level = partition_level;
    out.n = size();
    const auto levels = cell_full_levels(partition_level, kMaxLevel);
    out.values.resize(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l)
        out.values[l] = levels[l] < partition_level
                            ? 0.0
                            : std::ldexp(1.0, levels[l]) / static_cast<double>(out.n);
    return out;
}

int Design::refinement_cap() const {
    const std::uint64_t n = size();
    if (n < 2) return 1;
    const std::uint64_t nsq = n * n;
    return std::min(static_cast<int>(63 - std::countl_zero(nsq)), kMaxLevel);
}

int Design::deepest_full_level(int partition_level) const {
    const int cap = refinement_cap();
    int deepest = partition_level;
    for (int l : cell_full_levels(partition_level, cap)) deepest = std::max(deepest, l);
    return deepest;
}

int Design::finest_embedded_level(int j, std::uint64_t k, const WaveletSpec& spec) const {
    const SupportCells cells = support_cells(j, k, spec);
    int cap = refinement_cap();
    int best = cap;
    for (std::uint64_t t = 0; t < cells.count && best > j; ++t)
        best = std::min(best, cell_full_level(j, cells.cell(t), best));
    return best > j ? best : undefined_level;
}

std::vector<int> Design::finest_embedded_levels(int j, const WaveletSpec& spec) const {
    const std::uint64_t count = std::uint64_t{1} << j;
    const int cap = refinement_cap();
    std::vector<int> full = cell_full_levels(j, cap);
    const std::uint64_t width =
        std::min<std::uint64_t>(2 * static_cast<std::uint64_t>(spec.half_support()) - 1, count);
    const std::vector<int> mins = circular_window_min(full, width);

    std::vector<int> out(count);
    const std::uint64_t offset =
        (count - static_cast<std::uint64_t>(spec.half_support() - 1) % count) % count;
    for (std::uint64_t k = 0; k < count; ++k) {
        const int m = mins[(k + offset) % count];
        out[k] = m > j ? m : undefined_level;
    }
    return out;
}

double Observations::at(const DyadicPoint& p) const {
    auto it = map_.find(p.key());
    if (it == map_.end())
        throw InconsistentDesign("missing observation at a required grid point");
    return it->second;
}

}  // namespace adawave
