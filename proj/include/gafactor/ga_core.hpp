#pragma once

#include <algorithm>
#include <cstddef>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gafactor/errors.hpp"
#include "gafactor/rng.hpp"
#include "gafactor/u128.hpp"

namespace gafactor {

// Fixed-width bit string encoding an integer candidate. Width is the bit
// length of the interval's upper bound, so every value in the interval is
// representable (and some bit patterns fall outside it; see decode_repair).
struct Chromosome {
    u64 bits = 0;
    unsigned width = 1;

    u64 mask() const { return (width >= 64) ? ~u64{0} : ((u64{1} << width) - 1); }

    friend bool operator==(const Chromosome& a, const Chromosome& b) {
        return a.bits == b.bits && a.width == b.width;
    }
};

inline Chromosome encode(u64 value, unsigned width) { return Chromosome{value, width}; }

struct GaConfig {
    std::size_t population = 1500;
    u32 max_generations = 2000;
    double crossover_rate = 0.5;
    double mutation_rate = 1.0;
    std::size_t tournament_size = 5;
    u64 seed = 1;

    void validate() const {
        if (population < 2) throw std::invalid_argument("population must be >= 2");
        if (tournament_size < 1 || tournament_size > population)
            throw std::invalid_argument("tournament_size must be in [1, population]");
        if (crossover_rate < 0.0 || crossover_rate > 1.0)
            throw std::invalid_argument("crossover_rate must be in [0, 1]");
        if (mutation_rate < 0.0 || mutation_rate > 1.0)
            throw std::invalid_argument("mutation_rate must be in [0, 1]");
    }
};

// Exact fitness: an exact divisor dominates everything else, otherwise
// smaller remainder wins. Equivalent to ordering by 1/(M mod p) with the
// divisor branch mapped to the dominating constant, but free of floating
// point loss for 23-digit moduli.
struct Fitness {
    bool is_solution = false;
    u128 remainder = 0;

    static Fitness worst() { return Fitness{false, u128_max()}; }

    bool better_than(const Fitness& o) const {
        if (is_solution != o.is_solution) return is_solution;
        return remainder < o.remainder;
    }

    friend bool operator==(const Fitness& a, const Fitness& b) {
        return a.is_solution == b.is_solution && a.remainder == b.remainder;
    }
};

/// Remainder fitness of `candidate` against M. Candidates below 2 score
/// worst-possible so the trivial divisor 1 can never win a tournament.
inline Fitness fitness_of(u128 m, u64 candidate) {
    if (candidate < 2) return Fitness::worst();
    const u128 r = m % candidate;
    return Fitness{r == 0, r};
}

// A candidate with its decoded value and cached fitness.
struct Scored {
    Chromosome chrom;
    u64 value = 0;
    Fitness fit;
};

/// Decodes the bit string; values outside [lower, upper] are resampled
/// uniformly from the interval and re-encoded in place.
inline u64 decode_repair(Chromosome& c, u64 lower, u64 upper, Rng& rng) {
    u64 v = c.bits & c.mask();
    if (v < lower || v > upper) {
        v = rng.range(lower, upper);
        c.bits = v;
    }
    return v;
}

/// Tournament selection: k uniform draws with replacement, fittest wins,
/// ties broken in favor of the earliest draw. Works over any individual
/// type exposing a `fit` member with better_than.
template <typename Individual>
const Individual& tournament_select(const std::vector<Individual>& pop, std::size_t k, Rng& rng) {
    const Individual* best = &pop[rng.below(pop.size())];
    for (std::size_t i = 1; i < k; ++i) {
        const Individual& challenger = pop[rng.below(pop.size())];
        if (challenger.fit.better_than(best->fit)) best = &challenger;
    }
    return *best;
}

/// Uniform crossover: with probability `rate`, every bit position swaps
/// between the offspring independently with probability 1/2; otherwise the
/// parents are returned unchanged.
inline std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a,
                                                           const Chromosome& b, double rate,
                                                           Rng& rng) {
    if (a.width != b.width)
        throw WidthMismatchError("crossover parents have widths " + std::to_string(a.width) +
                                 " and " + std::to_string(b.width));
    if (!rng.bernoulli(rate)) return {a, b};
    const u64 swap_mask = rng.next_u64() & a.mask();
    Chromosome c1{(a.bits & ~swap_mask) | (b.bits & swap_mask), a.width};
    Chromosome c2{(b.bits & ~swap_mask) | (a.bits & swap_mask), a.width};
    return {c1, c2};
}

/// With probability `rate`, flips exactly one uniformly chosen bit.
inline Chromosome mutate(Chromosome c, double rate, Rng& rng) {
    if (rng.bernoulli(rate)) c.bits ^= u64{1} << rng.below(c.width);
    return c;
}

/// n distinct values sampled uniformly without replacement from [lo, hi].
/// Throws IntervalTooSmallError when the interval holds fewer than n values.
inline std::vector<u64> sample_distinct(std::size_t n, u64 lo, u64 hi, Rng& rng) {
    const u128 size = u128{hi} - lo + 1;
    if (size < n)
        throw IntervalTooSmallError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] holds fewer than " + std::to_string(n) + " values");
    std::vector<u64> out;
    out.reserve(n);
    if (size <= u128{4} * n) {
        // small interval: partial Fisher-Yates over the full range
        std::vector<u64> all;
        all.reserve(static_cast<std::size_t>(size));
        for (u64 v = lo;; ++v) {
            all.push_back(v);
            if (v == hi) break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
        return out;
    }
    std::unordered_set<u64> seen;
    seen.reserve(n * 2);
    while (out.size() < n) {
        const u64 v = rng.range(lo, hi);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

} // namespace gafactor
