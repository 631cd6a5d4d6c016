#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gafactor/numtheory.hpp"

namespace gafactor {

// A named collection of verified balanced semiprimes.
struct Dataset {
    std::string name;
    std::vector<SemiprimeRecord> records;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline SemiprimeRecord verify_record(u128 m, u64 p, u64 q, std::size_t row) {
    const std::string at = " (row " + std::to_string(row) + ")";
    if (p > q) std::swap(p, q);
    if (u128{p} * q != m)
        throw VerificationError("p*q != M" + at);
    if (digit_count(p) != digit_count(q))
        throw VerificationError("factors are not balanced" + at);
    if (!is_prime(p)) throw VerificationError(std::to_string(p) + " is not prime" + at);
    if (!is_prime(q)) throw VerificationError(std::to_string(q) + " is not prime" + at);
    return SemiprimeRecord{m, p, q, digit_count(m)};
}

} // namespace detail

/// Loads and verifies a dataset CSV (header `M,p,q`, decimal integers).
/// Rows failing to parse raise ParseError; rows failing the arithmetic or
/// primality checks raise VerificationError, both with the row number.
inline Dataset load_dataset(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open dataset: " + path);

    Dataset ds;
    const auto slash = path.find_last_of('/');
    std::string stem = (slash == std::string::npos) ? path : path.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    ds.name = (dot == std::string::npos) ? stem : stem.substr(0, dot);

    std::string line;
    std::size_t row = 0;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        if (row == 1) {
            if (detail::split_csv_line(line) != std::vector<std::string>{"M", "p", "q"})
                throw ParseError("expected header 'M,p,q' in " + path);
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()) + " (row " +
                             std::to_string(row) + ")");
        u128 m, p, q;
        try {
            m = parse_u128(fields[0]);
            p = parse_u128(fields[1]);
            q = parse_u128(fields[2]);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " (row " + std::to_string(row) + ")");
        }
        if (p > ~u64{0} || q > ~u64{0})
            throw VerificationError("factor exceeds capacity (row " + std::to_string(row) + ")");
        ds.records.push_back(
            detail::verify_record(m, static_cast<u64>(p), static_cast<u64>(q), row));
    }
    return ds;
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "M,p,q\n";
    for (const SemiprimeRecord& r : ds.records)
        os << to_string(r.m) << ',' << r.p << ',' << r.q << '\n';
    if (!os.good()) throw IoError("write failed: " + path);
}

/// `count` datasets, one record per digit length in [digits_lo, digits_hi],
/// reproducible from the seed.
inline std::vector<Dataset> make_datasets(std::size_t count, unsigned digits_lo,
                                          unsigned digits_hi, u64 seed) {
    if (digits_lo > digits_hi || digits_lo < 4 || digits_hi > kMaxSemiprimeDigits)
        throw CapacityError("digit range must satisfy 4 <= lo <= hi <= 38");
    std::vector<Dataset> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        Dataset ds;
        ds.name = "d" + std::to_string(i);
        for (unsigned d = digits_lo; d <= digits_hi; ++d)
            ds.records.push_back(generate_semiprime(d, mix64(seed ^ mix64(i * 64 + d))));
        out.push_back(std::move(ds));
    }
    return out;
}

} // namespace gafactor
