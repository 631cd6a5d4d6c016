// gafactor: factor balanced semiprimes with two genetic algorithms and
// reproduce the search-space-shrinkage and prime-digit experiments.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gafactor/gafactor.hpp"

namespace {

using namespace gafactor;

struct DigitRange {
    unsigned lo = 8;
    unsigned hi = 23;
};

DigitRange parse_digit_range(const std::string& s) {
    std::string a = s, b = s;
    if (auto p = s.find(".."); p != std::string::npos) {
        a = s.substr(0, p);
        b = s.substr(p + 2);
    } else if (auto q = s.find('-'); q != std::string::npos) {
        a = s.substr(0, q);
        b = s.substr(q + 1);
    }
    DigitRange r;
    r.lo = static_cast<unsigned>(std::stoul(a));
    r.hi = static_cast<unsigned>(std::stoul(b));
    if (r.lo > r.hi) throw ParseError("digit range lower bound exceeds upper bound: " + s);
    return r;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_gen_datasets(std::size_t count, const std::string& digits, u64 seed,
                     const std::string& out_dir) {
    const DigitRange r = parse_digit_range(digits);
    const auto datasets = make_datasets(count, r.lo, r.hi, seed);
    for (const Dataset& ds : datasets) {
        const std::string path = out_dir + "/" + ds.name + ".csv";
        save_dataset(ds, path);
        std::cout << path << "\n";
    }
    return 0;
}

int cmd_factor(const std::string& m_str, const std::string& algorithm, u64 seed, GaConfig cfg,
               bool mutation_given, int form_a, int form_d) {
    const Algorithm algo = parse_algorithm(algorithm);
    if (!mutation_given) cfg.mutation_rate = default_ga_config(algo).mutation_rate;
    cfg.seed = seed;

    const u128 m = parse_u128(m_str);
    const FactorizationProblem problem = build_problem(m);

    RunReport report;
    if (algo == Algorithm::simple_ga) {
        report = run_simple_ga(problem, cfg);
    } else {
        SieveForm form{6, 1};
        if (form_a > 0)
            form = SieveForm(static_cast<u32>(form_a), static_cast<u32>(form_d));
        else if (problem.digits_m >= 19)
            form = tune_sieve_form(m, seed);
        std::fprintf(stderr, "sieve form: a=%u d=%u\n", form.a(), form.d());
        report = run_sieve(problem, form, cfg);
    }

    if (!report.success) {
        std::fprintf(stderr, "no factor found within %u generations (seed=%llu)\n",
                     report.generations, static_cast<unsigned long long>(seed));
        return 1;
    }
    std::cout << *report.factor << " x " << to_string(*report.cofactor) << "\n";
    std::fprintf(stderr, "digits=%u generation=%u elapsed=%.3fs seed=%llu\n", problem.digits_m,
                 report.generations, report.elapsed_s, static_cast<unsigned long long>(seed));
    return 0;
}

void print_report_table(const BatchReport& report) {
    std::printf("%-7s %-12s %-8s %-8s %-8s %-12s %-12s\n", "digits", "success%", "min_gen",
                "max_gen", "avg_gen", "total_s", "avg_iter_s");
    for (const BatchRow& r : report.rows) {
        std::printf("%-7u %-12.2f ", r.digits, r.success_rate_pct);
        if (r.min_generation)
            std::printf("%-8u %-8u %-8.1f ", *r.min_generation, *r.max_generation,
                        *r.avg_generation);
        else
            std::printf("%-8s %-8s %-8s ", "-", "-", "-");
        std::printf("%-12.2f %-12.2f\n", r.total_time_s, r.avg_time_per_iter_s);
    }
}

int cmd_bench(const std::string& dataset_path, const std::string& algorithm, u32 instances,
              u64 base_seed, unsigned jobs, const std::string& report_path,
              const std::string& format) {
    const Dataset ds = load_dataset(dataset_path);
    const Algorithm algo = parse_algorithm(algorithm);
    BatchOptions opt;
    opt.instances = instances;
    opt.base_seed = base_seed;
    opt.jobs = jobs;
    opt.ga = default_ga_config(algo);

    const BatchReport report = run_batch(ds, algo, opt);
    print_report_table(report);
    if (!report_path.empty()) {
        emit_report(report, parse_report_format(format), report_path);
        write_runs_csv(report.runs, report_path + ".runs.csv");
        std::fprintf(stderr, "report: %s\nraw runs: %s.runs.csv\n", report_path.c_str(),
                     report_path.c_str());
    }
    return 0;
}

int cmd_sss(const std::string& dataset_path) {
    const Dataset ds = load_dataset(dataset_path);
    std::vector<double> odd, even;
    std::printf("M,digits,sss_pct\n");
    for (const SemiprimeRecord& rec : ds.records) {
        const FactorizationProblem problem = build_problem(rec.m);
        const double v = sss(problem);
        std::printf("%s,%u,%.2f\n", to_string(rec.m).c_str(), rec.digits, v);
        (rec.digits % 2 ? odd : even).push_back(v);
    }
    if (!odd.empty()) std::printf("# odd_median_pct=%.2f (n=%zu)\n", median(odd), odd.size());
    if (!even.empty()) std::printf("# even_median_pct=%.2f (n=%zu)\n", median(even), even.size());
    return 0;
}

int cmd_digits(unsigned n_max, const std::string& out) {
    write_convergence_csv(convergence_report(n_max), out);
    std::cout << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GA factorization toolkit for balanced semiprimes"};
    app.require_subcommand(1);

    // gen-datasets
    std::size_t gd_count = 5;
    std::string gd_digits = "8..23";
    u64 gd_seed = 1;
    std::string gd_out = ".";
    auto* gen = app.add_subcommand("gen-datasets", "generate verified semiprime datasets");
    gen->add_option("--count", gd_count, "number of datasets");
    gen->add_option("--digits", gd_digits, "digit range, e.g. 8..23");
    gen->add_option("--seed", gd_seed, "generator seed");
    gen->add_option("--out-dir", gd_out, "output directory");

    // factor
    std::string f_m, f_algo = "simple-ga";
    u64 f_seed = 1;
    GaConfig f_cfg;
    int f_a = 0, f_d = 1;
    auto* fac = app.add_subcommand("factor", "factor one semiprime");
    fac->add_option("--m", f_m, "the semiprime M")->required();
    fac->add_option("--algorithm", f_algo, "simple-ga or sieve");
    fac->add_option("--seed", f_seed, "run seed");
    fac->add_option("--max-generations", f_cfg.max_generations, "generation cap");
    fac->add_option("--population", f_cfg.population, "population size");
    fac->add_option("--crossover", f_cfg.crossover_rate, "crossover rate in [0,1]");
    auto* f_mut = fac->add_option("--mutation", f_cfg.mutation_rate, "mutation rate in [0,1]");
    fac->add_option("--a", f_a, "sieve form a (in [6,1000]); omit to auto-select");
    fac->add_option("--d", f_d, "sieve form d (1 or 2)");

    // bench
    std::string b_dataset, b_algo = "simple-ga", b_report, b_format = "csv";
    u32 b_instances = 30;
    u64 b_seed = 1;
    unsigned b_jobs = 1;
    auto* bench = app.add_subcommand("bench", "run a seeded batch over a dataset");
    bench->add_option("--dataset", b_dataset, "dataset CSV (M,p,q)")->required();
    bench->add_option("--algorithm", b_algo, "simple-ga or sieve");
    bench->add_option("--instances", b_instances, "runs per number");
    bench->add_option("--base-seed", b_seed, "base seed; per-run seeds derive from it");
    bench->add_option("--jobs", b_jobs, "worker threads (0 = all cores)")
        ->envname("GAFACTOR_JOBS");
    bench->add_option("--report", b_report, "write report to this path");
    bench->add_option("--format", b_format, "report format: csv or json");

    // sss
    std::string s_dataset;
    auto* sss_cmd = app.add_subcommand("sss", "search-space shrinkage table for a dataset");
    sss_cmd->add_option("--dataset", s_dataset, "dataset CSV (M,p,q)")->required();

    // digits
    unsigned dg_nmax = 8;
    std::string dg_out = "digit_distribution.csv";
    auto* dig = app.add_subcommand("digits", "prime digit distribution convergence table");
    dig->add_option("--n-max", dg_nmax, "largest exponent n (primes < 10^n), 1..9");
    dig->add_option("--out", dg_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_datasets(gd_count, gd_digits, gd_seed, gd_out);
        if (fac->parsed())
            return cmd_factor(f_m, f_algo, f_seed, f_cfg, f_mut->count() > 0, f_a, f_d);
        if (bench->parsed())
            return cmd_bench(b_dataset, b_algo, b_instances, b_seed, b_jobs, b_report, b_format);
        if (sss_cmd->parsed()) return cmd_sss(s_dataset);
        if (dig->parsed()) return cmd_digits(dg_nmax, dg_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
