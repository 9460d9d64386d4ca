#ifndef ADAWAVE_DYADIC_HPP
#define ADAWAVE_DYADIC_HPP

#include <compare>
#include <cstdint>
#include <functional>

#include "adawave/errors.hpp"

namespace adawave {

// Finest resolution level representable by a DyadicPoint. Keys are numerators
// at this level, so ordering and grid membership stay exact integer tests.
inline constexpr int kMaxLevel = 40;

// An exact dyadic rational k * 2^-i in [0, 1). Stored in canonical form:
// the numerator is odd, or the level is 0 (which leaves only the point 0).
class DyadicPoint {
public:
    constexpr DyadicPoint() : num_(0), level_(0) {}

    DyadicPoint(std::uint64_t numerator, int level) : num_(numerator), level_(level) {
        if (level < 0 || level > kMaxLevel)
            throw InvalidInput("dyadic level out of range");
        if (numerator >> level)
            throw InvalidInput("dyadic numerator not in [0, 2^level)");
        canonicalize();
    }

    std::uint64_t numerator() const { return num_; }
    int level() const { return level_; }

    // Numerator rescaled to a common (finer) level.
    std::uint64_t key_at(int level) const { return num_ << (level - level_); }
    std::uint64_t key() const { return key_at(kMaxLevel); }

    static DyadicPoint from_key(std::uint64_t key) {
        DyadicPoint p;
        p.num_ = key;
        p.level_ = kMaxLevel;
        p.canonicalize();
        return p;
    }

    double value() const { return static_cast<double>(num_) / static_cast<double>(1ULL << level_); }

    friend bool operator==(const DyadicPoint& a, const DyadicPoint& b) = default;
    friend std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b) {
        return a.key() <=> b.key();
    }

private:
    void canonicalize() {
        if (num_ == 0) {
            level_ = 0;
            return;
        }
        while (level_ > 0 && (num_ & 1) == 0) {
            num_ >>= 1;
            --level_;
        }
    }

    std::uint64_t num_;
    int level_;
};

// Half-open dyadic interval [lo, hi), endpoints k * 2^-i with hi <= 1.
// hi_num may equal 2^hi_level so the right endpoint can reach 1 exactly.
struct DyadicInterval {
    std::uint64_t lo_num = 0;
    std::uint64_t hi_num = 0;
    int level = 0;

    double lo() const { return static_cast<double>(lo_num) / static_cast<double>(1ULL << level); }
    double hi() const { return static_cast<double>(hi_num) / static_cast<double>(1ULL << level); }
    bool empty() const { return hi_num <= lo_num; }
};

}  // namespace adawave

template <>
struct std::hash<adawave::DyadicPoint> {
    std::size_t operator()(const adawave::DyadicPoint& p) const noexcept {
        return std::hash<std::uint64_t>{}(p.key());
    }
};

#endif
