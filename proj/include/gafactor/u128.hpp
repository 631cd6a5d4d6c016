#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gafactor/errors.hpp"

namespace gafactor {

// All exact arithmetic in the toolkit runs on 128-bit unsigned integers.
// That covers semiprimes up to 38 decimal digits (10^38 < 2^127) without
// arbitrary-precision overhead.
using u128 = unsigned __int128;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline constexpr unsigned kMaxSemiprimeDigits = 38;

inline constexpr u128 u128_max() { return ~u128{0}; }

inline constexpr unsigned bit_length(u128 v) {
    unsigned n = 0;
    while (v != 0) {
        ++n;
        v >>= 1;
    }
    return n;
}

inline constexpr unsigned bit_length(u64 v) {
    return v == 0 ? 0u : 64u - static_cast<unsigned>(__builtin_clzll(v));
}

/// 10^e as an exact 128-bit value, e <= 38.
inline constexpr u128 pow10_u128(unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

inline constexpr unsigned digit_count(u128 v) {
    unsigned n = 1;
    while (v >= 10) {
        v /= 10;
        ++n;
    }
    return n;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int pos = 40;
    while (v != 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, buf + 40);
}

/// Parses a decimal unsigned integer; rejects empty strings, stray
/// characters and values that do not fit 128 bits.
inline u128 parse_u128(std::string_view s) {
    if (s.empty()) throw ParseError("empty integer literal");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError("invalid digit in integer literal: '" + std::string(s) + "'");
        unsigned d = static_cast<unsigned>(c - '0');
        if (v > (u128_max() - d) / 10)
            throw ParseError("integer literal exceeds 128-bit capacity: '" + std::string(s) + "'");
        v = v * 10 + d;
    }
    return v;
}

/// (a * b) mod m without overflow for any m < 2^127.
inline u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    // when both operands fit 64 bits the native 128-bit product is exact
    if (a <= ~u64{0} && b <= ~u64{0}) return (a * b) % m;
    if (a < b) {
        u128 t = a;
        a = b;
        b = t;
    }
    u128 r = 0;
    while (b != 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a += a;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

inline u128 powmod(u128 base, u128 exp, u128 m) {
    if (m == 1) return 0;
    u128 r = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace gafactor
