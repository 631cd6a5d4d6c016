#pragma once

#include <random>

#include "gafactor/u128.hpp"

namespace gafactor {

/// splitmix64 finalizer; used to derive per-run seeds from inputs so that
/// parallel schedules never influence the random streams.
inline constexpr u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded random source for every stochastic operation in the toolkit.
// The engine is std::mt19937_64 (a documented, portable algorithm); the
// sampling helpers below are hand-rolled so that draws are identical on
// every standard library implementation.
class Rng {
public:
    explicit Rng(u64 seed) : engine_(seed) {}

    u64 next_u64() { return engine_(); }

    /// Unbiased uniform draw in [0, n), n >= 1 (rejection sampling).
    u64 below(u64 n) {
        const u64 limit = ~u64{0} - ~u64{0} % n;
        u64 x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform draw in [lo, hi], inclusive.
    u64 range(u64 lo, u64 hi) {
        const u64 span = hi - lo;
        if (span == ~u64{0}) return engine_();
        return lo + below(span + 1);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double canonical() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// True with probability p; exact at p = 0 and p = 1.
    bool bernoulli(double p) { return canonical() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace gafactor
