#pragma once

#include <atomic>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "gafactor/dataset.hpp"
#include "gafactor/sieve_method.hpp"
#include "gafactor/simple_ga.hpp"

namespace gafactor {

enum class Algorithm { simple_ga, sieve };

inline std::string algorithm_name(Algorithm a) {
    return a == Algorithm::simple_ga ? "simple-ga" : "sieve";
}

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "simple-ga") return Algorithm::simple_ga;
    if (s == "sieve") return Algorithm::sieve;
    throw ParseError("unknown algorithm '" + s + "' (expected simple-ga or sieve)");
}

/// Defaults used throughout: population 1500, cap 2000, crossover 50%, tournament 5;
/// mutation 100% for the simple GA and 95% for the sieve method.
inline GaConfig default_ga_config(Algorithm a) {
    GaConfig cfg;
    cfg.mutation_rate = (a == Algorithm::sieve) ? 0.95 : 1.0;
    return cfg;
}

// One run of a batch, as persisted in the raw runs file.
struct RunRecord {
    u128 m = 0;
    unsigned digits = 0;
    u32 instance = 0;
    u64 seed = 0;
    bool success = false;
    std::optional<u64> factor;
    std::optional<u128> cofactor;
    u32 generations = 0;
    double elapsed_s = 0.0;
    std::string error; // nonempty when the run failed with an exception
};

// Aggregated KPIs for one digit length. Generation statistics cover
// successful runs only; failures count toward the success-rate denominator.
struct BatchRow {
    unsigned digits = 0;
    u32 instances = 0;
    u32 successes = 0;
    double success_rate_pct = 0.0;
    std::optional<u32> min_generation;
    std::optional<u32> max_generation;
    std::optional<double> avg_generation;
    double total_time_s = 0.0;
    double avg_time_per_iter_s = 0.0;
};

struct BatchReport {
    std::string algorithm;
    std::vector<BatchRow> rows; // ascending digit length
    std::vector<RunRecord> runs;
};

struct BatchOptions {
    u32 instances = 30;
    u64 base_seed = 1;
    unsigned jobs = 1; // 0 = hardware concurrency
    GaConfig ga;       // per-algorithm defaults applied when left as-is

    BatchOptions() = default;
};

/// Per-run seed: base_seed xor a splitmix hash of (M, instance index).
/// Input-derived, so schedules and thread counts cannot affect it.
inline u64 derive_run_seed(u64 base_seed, u128 m, u64 instance) {
    const u64 folded = mix64(static_cast<u64>(m) ^ mix64(static_cast<u64>(m >> 64)));
    return base_seed ^ mix64(folded ^ mix64(instance));
}

/// Seed for the per-record sieve-form tuning step.
inline u64 derive_tune_seed(u64 base_seed, u128 m) {
    return derive_run_seed(base_seed, m, ~u64{0});
}

namespace detail {

inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::size_t worker_count = std::min<std::size_t>(jobs, n);
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (std::thread& t : workers) t.join();
}

} // namespace detail

/// Recomputes the per-digit-length KPI rows from raw run records.
inline std::vector<BatchRow> aggregate_runs(const std::vector<RunRecord>& runs) {
    struct Acc {
        u32 instances = 0;
        u32 successes = 0;
        u32 min_gen = 0;
        u32 max_gen = 0;
        u64 gen_sum = 0;
        double time_sum = 0.0;
    };
    std::map<unsigned, Acc> by_digits;
    for (const RunRecord& r : runs) {
        Acc& a = by_digits[r.digits];
        ++a.instances;
        a.time_sum += r.elapsed_s;
        if (r.success) {
            if (a.successes == 0 || r.generations < a.min_gen) a.min_gen = r.generations;
            if (a.successes == 0 || r.generations > a.max_gen) a.max_gen = r.generations;
            a.gen_sum += r.generations;
            ++a.successes;
        }
    }
    std::vector<BatchRow> rows;
    rows.reserve(by_digits.size());
    for (const auto& [digits, a] : by_digits) {
        BatchRow row;
        row.digits = digits;
        row.instances = a.instances;
        row.successes = a.successes;
        row.success_rate_pct = 100.0 * a.successes / a.instances;
        if (a.successes > 0) {
            row.min_generation = a.min_gen;
            row.max_generation = a.max_gen;
            row.avg_generation = static_cast<double>(a.gen_sum) / a.successes;
        }
        row.total_time_s = a.time_sum;
        row.avg_time_per_iter_s = a.time_sum / a.instances;
        rows.push_back(row);
    }
    return rows;
}

/// Runs `instances` seeded runs of the chosen algorithm per dataset record
/// across a bounded worker pool. Per-run seeds are input-derived, so the
/// resulting report is identical for any worker count. For the sieve with
/// M of >= 19 digits, the form is tuned once per record before its runs.
inline BatchReport run_batch(const Dataset& ds, Algorithm algo, const BatchOptions& opt) {
    const std::size_t n_records = ds.records.size();

    struct Prepared {
        std::optional<FactorizationProblem> problem;
        SieveForm form{6, 1};
        std::string error;
    };
    std::vector<Prepared> prepared(n_records);

    detail::parallel_for(n_records, opt.jobs, [&](std::size_t i) {
        const SemiprimeRecord& rec = ds.records[i];
        try {
            prepared[i].problem = build_problem(rec.m);
            if (algo == Algorithm::sieve && prepared[i].problem->digits_m >= 19)
                prepared[i].form = tune_sieve_form(rec.m, derive_tune_seed(opt.base_seed, rec.m));
        } catch (const std::exception& e) {
            prepared[i].error = e.what();
        }
    });

    std::vector<RunRecord> runs(n_records * opt.instances);
    detail::parallel_for(runs.size(), opt.jobs, [&](std::size_t t) {
        const std::size_t rec_idx = t / opt.instances;
        const u32 instance = static_cast<u32>(t % opt.instances);
        const SemiprimeRecord& rec = ds.records[rec_idx];
        RunRecord& out = runs[t];
        out.m = rec.m;
        out.digits = rec.digits;
        out.instance = instance;
        out.seed = derive_run_seed(opt.base_seed, rec.m, instance);
        if (!prepared[rec_idx].error.empty()) {
            out.error = prepared[rec_idx].error;
            return;
        }
        GaConfig cfg = opt.ga;
        cfg.seed = out.seed;
        try {
            const RunReport r =
                (algo == Algorithm::simple_ga)
                    ? run_simple_ga(*prepared[rec_idx].problem, cfg)
                    : run_sieve(*prepared[rec_idx].problem, prepared[rec_idx].form, cfg);
            out.success = r.success;
            out.factor = r.factor;
            out.cofactor = r.cofactor;
            out.generations = r.generations;
            out.elapsed_s = r.elapsed_s;
        } catch (const std::exception& e) {
            out.error = e.what();
            out.generations = cfg.max_generations;
        }
    });

    BatchReport report;
    report.algorithm = algorithm_name(algo);
    report.runs = std::move(runs);
    report.rows = aggregate_runs(report.runs);
    return report;
}

// ---------------------------------------------------------------------------
// Report serialization. CSV columns are fixed; doubles use the shortest
// representation that round-trips exactly.

inline constexpr const char* kReportCsvHeader =
    "digits,success_rate_pct,min_generation,max_generation,avg_generation,total_time_s,"
    "avg_time_per_iter_s";

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string report_to_csv(const BatchReport& report) {
    std::string out = std::string(kReportCsvHeader) + "\n";
    for (const BatchRow& r : report.rows) {
        out += std::to_string(r.digits) + ',' + format_double(r.success_rate_pct) + ',';
        out += r.min_generation ? std::to_string(*r.min_generation) : "";
        out += ',';
        out += r.max_generation ? std::to_string(*r.max_generation) : "";
        out += ',';
        out += r.avg_generation ? format_double(*r.avg_generation) : "";
        out += ',' + format_double(r.total_time_s) + ',' + format_double(r.avg_time_per_iter_s) +
               '\n';
    }
    return out;
}

inline nlohmann::json report_to_json(const BatchReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BatchRow& r : report.rows) {
        nlohmann::json row;
        row["digits"] = r.digits;
        row["success_rate_pct"] = r.success_rate_pct;
        if (r.min_generation) {
            row["min_generation"] = *r.min_generation;
            row["max_generation"] = *r.max_generation;
            row["avg_generation"] = *r.avg_generation;
        } else {
            row["min_generation"] = nullptr;
            row["max_generation"] = nullptr;
            row["avg_generation"] = nullptr;
        }
        row["total_time_s"] = r.total_time_s;
        row["avg_time_per_iter_s"] = r.avg_time_per_iter_s;
        rows.push_back(row);
    }
    return nlohmann::json{{"algorithm", report.algorithm}, {"rows", rows}};
}

namespace detail {

inline double parse_double_exact(const std::string& s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

} // namespace detail

/// Parses the 7-column report CSV back into KPI rows (inverse of
/// report_to_csv; instance counts are not part of the format).
inline std::vector<BatchRow> parse_report_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line) || line != kReportCsvHeader)
        throw ParseError("missing report CSV header");
    std::vector<BatchRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 7) throw ParseError("expected 7 report columns, got line: " + line);
        BatchRow r;
        r.digits = static_cast<unsigned>(std::stoul(f[0]));
        r.success_rate_pct = detail::parse_double_exact(f[1], "success rate");
        if (!f[2].empty()) r.min_generation = static_cast<u32>(std::stoul(f[2]));
        if (!f[3].empty()) r.max_generation = static_cast<u32>(std::stoul(f[3]));
        if (!f[4].empty()) r.avg_generation = detail::parse_double_exact(f[4], "avg generation");
        r.total_time_s = detail::parse_double_exact(f[5], "total time");
        r.avg_time_per_iter_s = detail::parse_double_exact(f[6], "avg time");
        rows.push_back(r);
    }
    return rows;
}

inline BatchReport parse_report_json(const nlohmann::json& j) {
    BatchReport report;
    report.algorithm = j.at("algorithm").get<std::string>();
    for (const auto& row : j.at("rows")) {
        BatchRow r;
        r.digits = row.at("digits").get<unsigned>();
        r.success_rate_pct = row.at("success_rate_pct").get<double>();
        if (!row.at("min_generation").is_null()) {
            r.min_generation = row.at("min_generation").get<u32>();
            r.max_generation = row.at("max_generation").get<u32>();
            r.avg_generation = row.at("avg_generation").get<double>();
        }
        r.total_time_s = row.at("total_time_s").get<double>();
        r.avg_time_per_iter_s = row.at("avg_time_per_iter_s").get<double>();
        report.rows.push_back(r);
    }
    return report;
}

enum class ReportFormat { csv, json };

inline ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw ParseError("unknown report format '" + s + "' (expected csv or json)");
}

inline void emit_report(const BatchReport& report, ReportFormat format, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    if (format == ReportFormat::csv)
        os << report_to_csv(report);
    else
        os << report_to_json(report).dump(2) << '\n';
    if (!os.good()) throw IoError("write failed: " + path);
}

// Raw per-run records, persisted so reports can be re-derived and audited.

inline constexpr const char* kRunsCsvHeader =
    "M,digits,instance,seed,success,factor,cofactor,generations,elapsed_s,error";

inline std::string runs_to_csv(const std::vector<RunRecord>& runs) {
    std::string out = std::string(kRunsCsvHeader) + "\n";
    for (const RunRecord& r : runs) {
        out += to_string(r.m) + ',' + std::to_string(r.digits) + ',' + std::to_string(r.instance) +
               ',' + std::to_string(r.seed) + ',' + (r.success ? "1" : "0") + ',';
        out += r.factor ? std::to_string(*r.factor) : "";
        out += ',';
        out += r.cofactor ? to_string(*r.cofactor) : "";
        out += ',' + std::to_string(r.generations) + ',' + format_double(r.elapsed_s) + ',';
        std::string err = r.error;
        for (char& c : err)
            if (c == ',' || c == '\n') c = ';';
        out += err + '\n';
    }
    return out;
}

inline std::vector<RunRecord> parse_runs_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line) || line != kRunsCsvHeader)
        throw ParseError("missing runs CSV header");
    std::vector<RunRecord> runs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 10) throw ParseError("expected 10 runs columns, got line: " + line);
        RunRecord r;
        r.m = parse_u128(f[0]);
        r.digits = static_cast<unsigned>(std::stoul(f[1]));
        r.instance = static_cast<u32>(std::stoul(f[2]));
        r.seed = std::stoull(f[3]);
        r.success = (f[4] == "1");
        if (!f[5].empty()) r.factor = static_cast<u64>(parse_u128(f[5]));
        if (!f[6].empty()) r.cofactor = parse_u128(f[6]);
        r.generations = static_cast<u32>(std::stoul(f[7]));
        r.elapsed_s = detail::parse_double_exact(f[8], "elapsed");
        r.error = f[9];
        runs.push_back(r);
    }
    return runs;
}

inline void write_runs_csv(const std::vector<RunRecord>& runs, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << runs_to_csv(runs);
    if (!os.good()) throw IoError("write failed: " + path);
}

} // namespace gafactor
