#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include "gafactor/errors.hpp"
#include "gafactor/numtheory.hpp"
#include "gafactor/u128.hpp"

namespace gafactor {

/// Streams every prime below `limit` to `fn`, ascending. Segmented
/// odds-only sieve; memory stays bounded for limits up to 10^9 and beyond.
template <typename F>
void primes_below(u64 limit, F&& fn) {
    if (limit > 2) fn(u64{2});
    if (limit <= 3) return;

    const u64 root = static_cast<u64>(isqrt(u128{limit - 1}));
    std::vector<u64> base; // odd primes <= root
    if (root >= 3) {
        const std::size_t half = static_cast<std::size_t>((root - 1) / 2); // index i <-> 2i+3
        std::vector<bool> comp(half, false);
        for (std::size_t i = 0; i < half; ++i) {
            if (comp[i]) continue;
            const u64 p = 2 * i + 3;
            for (u64 mult = p * p; mult <= root; mult += 2 * p)
                comp[static_cast<std::size_t>((mult - 3) / 2)] = true;
        }
        for (std::size_t i = 0; i < half; ++i)
            if (!comp[i]) base.push_back(2 * i + 3);
    }

    constexpr u64 kSegmentSpan = u64{1} << 21;
    std::vector<unsigned char> comp;
    for (u64 lo = 3; lo < limit; lo += kSegmentSpan) {
        const u64 hi = std::min(lo + kSegmentSpan, limit); // segment [lo, hi), lo odd
        const std::size_t odds = static_cast<std::size_t>((hi - lo + 1) / 2);
        comp.assign(odds, 0);
        for (u64 p : base) {
            if (p * p >= hi) break;
            u64 m = ((lo + p - 1) / p) * p;
            if (m < p * p) m = p * p;
            if ((m & 1) == 0) m += p;
            for (; m < hi; m += 2 * p) comp[static_cast<std::size_t>((m - lo) / 2)] = 1;
        }
        for (std::size_t i = 0; i < odds; ++i)
            if (!comp[i]) fn(lo + 2 * i);
    }
}

// Digit occurrence statistics over all primes below 10^n.
struct DigitTable {
    unsigned n = 0;
    std::array<u64, 10> counts{};
    u64 prime_count = 0;
    u64 total_digits = 0;
    std::array<double, 10> probabilities{};

    double max_deviation() const {
        double m = 0.0;
        for (double p : probabilities) m = std::max(m, std::abs(p - 0.1));
        return m;
    }
};

/// Digit tables for every exponent 1..n_max from a single sieve pass,
/// snapshotting the cumulative tallies at each power of ten.
inline std::vector<DigitTable> digit_tables_up_to(unsigned n_max) {
    if (n_max < 1 || n_max > 9)
        throw std::invalid_argument("digit table exponent must be in [1, 9]");

    std::array<u64, 10> counts{};
    u64 prime_count = 0;
    u64 total_digits = 0;
    std::vector<DigitTable> tables;
    unsigned next_n = 1;
    u64 boundary = 10;

    auto snapshot = [&](unsigned n) {
        DigitTable t;
        t.n = n;
        t.counts = counts;
        t.prime_count = prime_count;
        t.total_digits = total_digits;
        for (int d = 0; d < 10; ++d)
            t.probabilities[d] =
                total_digits ? static_cast<double>(counts[d]) / static_cast<double>(total_digits)
                             : 0.0;
        tables.push_back(t);
    };

    primes_below(static_cast<u64>(pow10_u128(n_max)), [&](u64 p) {
        while (p >= boundary) {
            snapshot(next_n);
            ++next_n;
            boundary *= 10;
        }
        ++prime_count;
        u64 v = p;
        do {
            ++counts[v % 10];
            ++total_digits;
            v /= 10;
        } while (v != 0);
    });
    while (next_n <= n_max) {
        snapshot(next_n);
        ++next_n;
    }
    return tables;
}

inline DigitTable digit_table(unsigned n) { return digit_tables_up_to(n).back(); }

struct ConvergenceRow {
    unsigned n = 0;
    unsigned digit = 0;
    double probability = 0.0;
    double deviation = 0.0;
};

/// One row per (n, digit) for n = 1..n_max: P_n(d) and |P_n(d) - 0.1|.
inline std::vector<ConvergenceRow> convergence_report(unsigned n_max) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_max * 10);
    for (const DigitTable& t : digit_tables_up_to(n_max)) {
        for (unsigned d = 0; d < 10; ++d) {
            rows.push_back(ConvergenceRow{t.n, d, t.probabilities[d],
                                          std::abs(t.probabilities[d] - 0.1)});
        }
    }
    return rows;
}

inline void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os) {
    os << "n,digit,probability,deviation\n";
    char buf[80];
    for (const ConvergenceRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%u,%u,%.10f,%.10f\n", r.n, r.digit, r.probability,
                      r.deviation);
        os << buf;
    }
}

inline void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                                  const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_convergence_csv(rows, os);
    if (!os.good()) throw IoError("write failed: " + path);
}

} // namespace gafactor
