#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gafactor/errors.hpp"
#include "gafactor/rng.hpp"
#include "gafactor/u128.hpp"

namespace gafactor {

/// Exact floor square root: returns r with r^2 <= n < (r+1)^2.
inline u128 isqrt(u128 n) {
    if (n < 2) return n;
    u128 x = u128{1} << ((bit_length(n) + 1) / 2); // initial x >= sqrt(n)
    u128 y = (x + n / x) >> 1;
    while (y < x) {
        x = y;
        y = (x + n / x) >> 1;
    }
    return x;
}

inline u128 gcd(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Digit length of each prime factor of a balanced semiprime with D_M
/// decimal digits: D_M/2 when even, (D_M+1)/2 when odd.
inline unsigned factor_digit_length(unsigned d_m) {
    if (d_m < 1) throw std::invalid_argument("digit count must be >= 1");
    return (d_m % 2 == 0) ? d_m / 2 : (d_m + 1) / 2;
}

namespace detail {

inline constexpr u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Largest bound for which the 12 bases above are a proven deterministic
// Miller-Rabin witness set: 3,317,044,064,679,887,385,961,981.
inline u128 proven_witness_bound() {
    return u128{3317044} * pow10_u128(18) + u64{64679887385961981};
}

inline bool miller_rabin_witness_ok(u128 n, u128 a, u128 d, unsigned s) {
    a %= n;
    if (a == 0) return true;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline int jacobi(u128 a, u128 n) {
    a %= n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u128 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

inline u128 addmod(u128 a, u128 b, u128 n) {
    // a, b < n < 2^127, so the sum cannot wrap
    u128 s = a + b;
    return (s >= n) ? s - n : s;
}

inline u128 submod(u128 a, u128 b, u128 n) {
    return (a >= b) ? a - b : n - (b - a);
}

inline u128 halfmod(u128 x, u128 n) {
    // n odd, x < n
    return (x & 1) ? ((x + n) >> 1) : (x >> 1);
}

inline u128 mod_from_int(long long v, u128 n) {
    if (v >= 0) return u128(static_cast<u64>(v)) % n;
    u128 m = u128(static_cast<u64>(-v)) % n;
    return (m == 0) ? 0 : n - m;
}

// Strong Lucas probable-prime test with Selfridge parameter selection.
// Preconditions: n odd, n > 37, no factor among kSmallPrimes.
inline bool strong_lucas_probable_prime(u128 n) {
    u128 root = isqrt(n);
    if (root * root == n) return false;

    long long d_param = 5;
    while (true) {
        int j = jacobi(mod_from_int(d_param, n), n);
        if (j == 0) return false; // shares a factor with n
        if (j == -1) break;
        d_param = (d_param > 0) ? -(d_param + 2) : -(d_param - 2);
    }
    const long long q_param = (1 - d_param) / 4;
    const u128 d_mod = mod_from_int(d_param, n);
    const u128 q_mod = mod_from_int(q_param, n);

    // n + 1 = d * 2^s, d odd
    u128 d = n + 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    // Lucas ladder for U_d, V_d (P = 1), tracking Q^k.
    u128 u_k = 1, v_k = 1, q_k = q_mod; // U_1, V_1, Q^1
    unsigned bits = bit_length(d);
    for (unsigned i = bits - 1; i-- > 0;) {
        u128 u2 = mulmod(u_k, v_k, n);
        u128 v2 = submod(mulmod(v_k, v_k, n), addmod(q_k, q_k, n), n);
        q_k = mulmod(q_k, q_k, n);
        if ((d >> i) & 1) {
            u128 u_next = halfmod(addmod(u2, v2, n), n);
            u128 v_next = halfmod(addmod(mulmod(d_mod, u2, n), v2, n), n);
            u_k = u_next;
            v_k = v_next;
            q_k = mulmod(q_k, q_mod, n);
        } else {
            u_k = u2;
            v_k = v2;
        }
    }

    if (u_k == 0 || v_k == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        v_k = submod(mulmod(v_k, v_k, n), addmod(q_k, q_k, n), n);
        if (v_k == 0) return true;
        q_k = mulmod(q_k, q_k, n);
    }
    return false;
}

} // namespace detail

/// Exact primality test. Deterministic Miller-Rabin witnesses cover every
/// n below 3.317e24 (proven); beyond that the witnesses are combined with
/// a strong Lucas test (no composite passing both is known).
inline bool is_prime(u128 n) {
    if (n < 2) return false;
    for (u64 p : detail::kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : detail::kSmallPrimes) {
        if (!detail::miller_rabin_witness_ok(n, a, d, s)) return false;
    }
    if (n < detail::proven_witness_bound()) return true;
    return detail::strong_lucas_probable_prime(n);
}

/// Smallest prime strictly greater than n.
inline u128 next_prime(u128 n) {
    if (n < 2) return 2;
    u128 c = n + 1;
    if ((c & 1) == 0) ++c;
    while (!is_prime(c)) c += 2;
    return c;
}

// A factorization instance: the semiprime M, its digit length, the derived
// factor digit length and the shrunk search interval [lower, upper].
struct FactorizationProblem {
    u128 m = 0;
    unsigned digits_m = 0;      // D_M
    unsigned digits_factor = 0; // D_j
    u64 lower = 0;              // 10^(D_j - 1)
    u64 upper = 0;              // isqrt(M)
};

/// Builds the search problem for an odd composite M (>= 2 digits).
/// Throws PrimeInputError when M is prime and EmptySearchSpaceError when
/// the shrunk interval is empty (M is not a balanced semiprime).
inline FactorizationProblem build_problem(u128 m) {
    if (m < 10) throw std::invalid_argument("M must have at least 2 digits");
    if ((m & 1) == 0) throw std::invalid_argument("M must be odd");
    const unsigned d_m = digit_count(m);
    if (d_m > kMaxSemiprimeDigits)
        throw CapacityError("M exceeds the 38-digit capacity: " + to_string(m));
    if (is_prime(m)) throw PrimeInputError("M is prime, nothing to factor: " + to_string(m));

    FactorizationProblem p;
    p.m = m;
    p.digits_m = d_m;
    p.digits_factor = factor_digit_length(d_m);
    p.lower = static_cast<u64>(pow10_u128(p.digits_factor - 1));
    p.upper = static_cast<u64>(isqrt(m));
    if (p.lower >= p.upper)
        throw EmptySearchSpaceError("search interval is empty for M = " + to_string(m) +
                                    " (not a balanced semiprime)");
    return p;
}

/// Search Space Shrinkage in percent: (10^(Dj-1) - 2) / (sqrt(M) - 2) * 100.
/// A reporting metric; evaluated with double-precision sqrt(M).
inline double sss(const FactorizationProblem& p) {
    const double root = std::sqrt(static_cast<double>(p.m));
    return (static_cast<double>(p.lower) - 2.0) / (root - 2.0) * 100.0;
}

// A balanced semiprime with its known factors, for datasets and verification.
struct SemiprimeRecord {
    u128 m = 0;
    u64 p = 0;
    u64 q = 0;
    unsigned digits = 0;
};

namespace detail {

/// Random prime with exactly `digits` decimal digits. The starting point is
/// drawn log-uniformly across the decade, matching how RSA-style generators
/// (which draw primes of a fixed bit length) populate a decimal decade.
inline u64 random_prime_with_digits(unsigned digits, Rng& rng) {
    const u64 lo = static_cast<u64>(pow10_u128(digits - 1));
    const u64 hi = static_cast<u64>(pow10_u128(digits)) - 1;
    for (;;) {
        const double mag = std::pow(10.0, static_cast<double>(digits - 1) + rng.canonical());
        u64 start = static_cast<u64>(mag);
        if (start < lo) start = lo;
        if (start > hi) start = hi;
        const u128 p = next_prime(start - 1);
        if (p <= hi) return static_cast<u64>(p);
        // the draw landed so close to the decade end that the next prime
        // overflows it; redraw
    }
}

} // namespace detail

/// Generates a balanced semiprime with exactly `digits` decimal digits:
/// two distinct primes of factor_digit_length(digits) digits each whose
/// product has the requested length. Deterministic for a fixed seed.
inline SemiprimeRecord generate_semiprime(unsigned digits, u64 seed) {
    if (digits < 4 || digits > kMaxSemiprimeDigits)
        throw CapacityError("semiprime digit count must be in [4, 38], got " +
                            std::to_string(digits));
    const unsigned dj = factor_digit_length(digits);
    Rng rng(seed);
    for (;;) {
        u64 p = detail::random_prime_with_digits(dj, rng);
        u64 q = detail::random_prime_with_digits(dj, rng);
        if (p == q) continue;
        const u128 m = u128{p} * q;
        if (digit_count(m) != digits) continue;
        if (p > q) std::swap(p, q);
        return SemiprimeRecord{m, p, q, digits};
    }
}

} // namespace gafactor
