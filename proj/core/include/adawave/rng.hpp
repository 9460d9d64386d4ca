#ifndef ADAWAVE_RNG_HPP
#define ADAWAVE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace adawave {

// SplitMix64 finalizer. Used as a counter-based generator: every draw is a
// pure function of its key, so results do not depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

// Uniform in (0, 1]: the +1 keeps log() away from zero.
inline double uniform_from_bits(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1p-53;
}

// Standard normal draw keyed by an arbitrary 64-bit counter (Box-Muller).
inline double normal_from_key(std::uint64_t key) {
    const double u1 = uniform_from_bits(mix64(key, 0x5bf03635ae2b8cb1ULL));
    const double u2 = uniform_from_bits(mix64(key, 0x23a1f0f3800af6c5ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace adawave

#endif
