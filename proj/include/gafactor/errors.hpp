#pragma once

#include <stdexcept>
#include <string>

namespace gafactor {

/// Input M is prime; there is nothing to factor.
struct PrimeInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The factor search interval [10^(Dj-1), isqrt(M)] is empty for this M.
struct EmptySearchSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested more distinct samples than the interval holds.
struct IntervalTooSmallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The sieve n-interval is empty for this (problem, form).
struct EmptySieveSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested size exceeds the toolkit's 128-bit integer capacity.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Crossover parents have different chromosome widths.
struct WidthMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gafactor
