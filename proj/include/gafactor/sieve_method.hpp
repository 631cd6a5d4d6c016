#pragma once

#include <algorithm>
#include <map>
#include <unordered_set>
#include <vector>

#include "gafactor/ga_core.hpp"
#include "gafactor/numtheory.hpp"
#include "gafactor/simple_ga.hpp"

namespace gafactor {

// Candidate shape j = a*n +/- d from Dirichlet's theorem; (6, 1) recovers
// the classical 6n +/- 1 prime form.
class SieveForm {
public:
    SieveForm(u32 a, u32 d) : a_(a), d_(d) {
        if (a < 6 || a > 1000) throw std::invalid_argument("sieve form requires a in [6, 1000]");
        if (d != 1 && d != 2) throw std::invalid_argument("sieve form requires d in {1, 2}");
        if (gcd(a, d) != 1)
            throw std::invalid_argument("sieve form requires gcd(a, d) = 1, got (" +
                                        std::to_string(a) + ", " + std::to_string(d) + ")");
    }

    u32 a() const { return a_; }
    u32 d() const { return d_; }

    friend bool operator==(const SieveForm& x, const SieveForm& y) {
        return x.a_ == y.a_ && x.d_ == y.d_;
    }

private:
    u32 a_;
    u32 d_;
};

struct SieveSearchSpace {
    u64 n_lower = 0;
    u64 n_upper = 0;

    u64 size() const { return n_upper - n_lower + 1; }
};

/// n-interval such that every j in [lower, upper] of the form a*n +/- d has
/// its n inside it: n_lower = ceil((lower - d) / a), n_upper =
/// floor((upper + d) / a).
inline SieveSearchSpace sieve_bounds(u64 lower, u64 upper, const SieveForm& form) {
    const u64 a = form.a();
    const u64 d = form.d();
    const u64 n_lower = (lower > d) ? (lower - d + a - 1) / a : 0;
    const u64 n_upper = (upper + d) / a;
    if (n_lower > n_upper)
        throw EmptySieveSpaceError("empty sieve space for interval [" + std::to_string(lower) +
                                   ", " + std::to_string(upper) + "] and form (" +
                                   std::to_string(a) + ", " + std::to_string(d) + ")");
    return SieveSearchSpace{n_lower, n_upper};
}

inline SieveSearchSpace sieve_bounds(const FactorizationProblem& problem, const SieveForm& form) {
    return sieve_bounds(problem.lower, problem.upper, form);
}

// Best of the two sieve candidates a*n + d and a*n - d for one n. A side
// falling outside [lower, upper] scores worst-possible; ties keep '+'.
struct SieveScore {
    Fitness fit = Fitness::worst();
    char sign = '+';
    u64 candidate = 0;
};

inline SieveScore sieve_fitness(u128 m, u64 lower, u64 upper, const SieveForm& form, u64 n) {
    SieveScore score;
    const u128 an = u128{form.a()} * n;
    const u128 jp = an + form.d();
    if (jp >= lower && jp <= upper) {
        score.fit = fitness_of(m, static_cast<u64>(jp));
        score.sign = '+';
        score.candidate = static_cast<u64>(jp);
    }
    if (an > form.d()) {
        const u128 jm = an - form.d();
        if (jm >= lower && jm <= upper) {
            const Fitness f = fitness_of(m, static_cast<u64>(jm));
            if (f.better_than(score.fit)) {
                score.fit = f;
                score.sign = '-';
                score.candidate = static_cast<u64>(jm);
            }
        }
    }
    return score;
}

inline SieveScore sieve_fitness(const FactorizationProblem& problem, const SieveForm& form,
                                u64 n) {
    return sieve_fitness(problem.m, problem.lower, problem.upper, form, n);
}

/// Opposition-based complement of x with respect to [lower, upper]:
/// upper + lower - x, again inside the interval. An involution.
inline u64 obl_complement(u64 x, u64 lower, u64 upper) {
    return static_cast<u64>(u128{lower} + upper - x);
}

/// One generation's candidate pool: the population, then every member's
/// complement, deduplicated keeping the first occurrence.
inline std::vector<u64> obl_augment_dedup(const std::vector<u64>& ns, u64 lower, u64 upper) {
    std::vector<u64> out;
    out.reserve(ns.size() * 2);
    std::unordered_set<u64> seen;
    seen.reserve(ns.size() * 4);
    for (u64 n : ns)
        if (seen.insert(n).second) out.push_back(n);
    for (u64 n : ns) {
        const u64 c = obl_complement(n, lower, upper);
        if (seen.insert(c).second) out.push_back(c);
    }
    return out;
}

/// Every value in [lower, upper] the form can generate, ascending. With
/// form (6, 1) this is exactly the integers congruent to +/-1 mod 6.
inline std::vector<u64> sieve_candidate_set(const SieveForm& form, u64 lower, u64 upper) {
    SieveSearchSpace b{};
    try {
        b = sieve_bounds(lower, upper, form);
    } catch (const EmptySieveSpaceError&) {
        return {};
    }
    std::vector<u64> out;
    for (u64 n = b.n_lower;; ++n) {
        const u128 an = u128{form.a()} * n;
        const u128 jp = an + form.d();
        if (jp >= lower && jp <= upper) out.push_back(static_cast<u64>(jp));
        if (an > form.d()) {
            const u128 jm = an - form.d();
            if (jm >= lower && jm <= upper) out.push_back(static_cast<u64>(jm));
        }
        if (n == b.n_upper) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

struct SieveIndividual {
    Chromosome chrom;
    u64 n = 0;
    Fitness fit;
    char sign = '+';
    u64 candidate = 0;
};

struct SieveRunTrace {
    RunReport report;
    Fitness best = Fitness::worst(); // best fitness seen across the run
};

inline SieveRunTrace run_sieve_traced(const FactorizationProblem& problem, const SieveForm& form,
                                      const GaConfig& cfg) {
    cfg.validate();
    RunTimer timer;
    Rng rng(cfg.seed);
    const u128 m = problem.m;
    const SieveSearchSpace bounds = sieve_bounds(problem, form);

    // population is clamped to the sieve space size
    const std::size_t pop_n =
        static_cast<std::size_t>(std::min<u64>(cfg.population, bounds.size()));
    const unsigned width = bit_length(bounds.n_upper);

    std::vector<u64> ns = sample_distinct(pop_n, bounds.n_lower, bounds.n_upper, rng);
    SieveRunTrace trace;

    std::vector<SieveIndividual> pool;
    pool.reserve(pop_n * 2);
    for (u32 generation = 0;; ++generation) {
        pool.clear();
        for (u64 n : obl_augment_dedup(ns, bounds.n_lower, bounds.n_upper)) {
            const SieveScore s = sieve_fitness(problem, form, n);
            pool.push_back(SieveIndividual{encode(n, width), n, s.fit, s.sign, s.candidate});
            if (s.fit.better_than(trace.best)) trace.best = s.fit;
        }

        for (const SieveIndividual& ind : pool) {
            if (ind.fit.is_solution) {
                trace.report =
                    success_report(m, ind.candidate, generation, cfg.seed, timer.seconds());
                return trace;
            }
        }
        if (generation == cfg.max_generations) break;

        std::vector<u64> next;
        next.reserve(pop_n);
        while (next.size() < pop_n) {
            const SieveIndividual& pa = tournament_select(pool, cfg.tournament_size, rng);
            const SieveIndividual& pb = tournament_select(pool, cfg.tournament_size, rng);
            auto [c1, c2] = uniform_crossover(pa.chrom, pb.chrom, cfg.crossover_rate, rng);
            for (Chromosome* c : {&c1, &c2}) {
                if (next.size() == pop_n) break;
                Chromosome child = mutate(*c, cfg.mutation_rate, rng);
                next.push_back(decode_repair(child, bounds.n_lower, bounds.n_upper, rng));
            }
        }
        ns.swap(next);
    }

    trace.report.m = m;
    trace.report.generations = cfg.max_generations;
    trace.report.elapsed_s = timer.seconds();
    trace.report.seed = cfg.seed;
    return trace;
}

} // namespace detail

/// The Sieve Method factorizer: GA over n with candidates a*n +/- d,
/// opposition-based complements and per-generation uniqueness.
inline RunReport run_sieve(const FactorizationProblem& problem, const SieveForm& form,
                           const GaConfig& cfg) {
    return detail::run_sieve_traced(problem, form, cfg).report;
}

// Hyperparameter search configuration for tune_sieve_form. The inner
// config is the small-scale sieve each candidate form is scored with.
struct TuneOptions {
    std::size_t outer_population = 25;
    u32 outer_generations = 3; // generations evaluated, counting the initial one
    double outer_crossover = 0.5;
    double outer_mutation = 1.0;
    std::size_t outer_tournament = 5;
    std::size_t inner_population = 3000;
    u32 inner_max_generations = 200;
    double inner_crossover = 0.5;
    double inner_mutation = 0.95;
};

namespace detail {

// Outer-GA score of a form: success dominates, then fewer generations,
// then the best remainder the small-scale run reached.
struct FormScore {
    bool success = false;
    u32 generations = 0;
    Fitness best = Fitness::worst();

    bool better_than(const FormScore& o) const {
        if (success != o.success) return success;
        if (success && generations != o.generations) return generations < o.generations;
        return best.better_than(o.best);
    }
};

struct FormIndividual {
    Chromosome chrom;
    SieveForm form{6, 1};
    FormScore fit;
};

// Forms are encoded as 10 bits for a - 6 plus one bit for d - 1. Invalid
// decodes (a > 1000 or gcd != 1) are repaired by resampling a valid form.
inline SieveForm random_valid_form(Rng& rng) {
    for (;;) {
        const u32 a = static_cast<u32>(rng.range(6, 1000));
        const u32 d = static_cast<u32>(1 + rng.below(2));
        if (gcd(a, d) == 1) return SieveForm(a, d);
    }
}

inline Chromosome encode_form(const SieveForm& f) {
    return Chromosome{u64{f.a() - 6} | (u64{f.d() - 1} << 10), 11};
}

inline SieveForm decode_form_repair(Chromosome& c, Rng& rng) {
    const u64 bits = c.bits & c.mask();
    const u32 a = 6 + static_cast<u32>(bits & 0x3ff);
    const u32 d = 1 + static_cast<u32>((bits >> 10) & 1);
    if (a <= 1000 && gcd(a, d) == 1) return SieveForm(a, d);
    const SieveForm f = random_valid_form(rng);
    c = encode_form(f);
    return f;
}

} // namespace detail

/// Tunes (a, d) for M with a small GA over forms, each scored by one
/// small-scale sieve run with a seed derived from (seed, a, d). For M
/// shorter than 19 digits returns the default form (6, 1) without search.
inline SieveForm tune_sieve_form(u128 m, u64 seed, const TuneOptions& opt = TuneOptions{}) {
    const FactorizationProblem problem = build_problem(m);
    if (problem.digits_m < 19) return SieveForm(6, 1);

    Rng rng(seed);
    std::map<std::pair<u32, u32>, detail::FormScore> cache;
    auto evaluate = [&](const SieveForm& f) {
        const auto key = std::make_pair(f.a(), f.d());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        GaConfig cfg;
        cfg.population = opt.inner_population;
        cfg.max_generations = opt.inner_max_generations;
        cfg.crossover_rate = opt.inner_crossover;
        cfg.mutation_rate = opt.inner_mutation;
        cfg.seed = mix64(seed ^ mix64(u64{f.a()} * 1000003u + f.d()));
        detail::FormScore score;
        try {
            const detail::SieveRunTrace t = detail::run_sieve_traced(problem, f, cfg);
            score.success = t.report.success;
            score.generations = t.report.generations;
            score.best = t.best;
        } catch (const EmptySieveSpaceError&) {
            score = detail::FormScore{}; // unusable form, worst score
        }
        cache.emplace(key, score);
        return score;
    };

    std::vector<detail::FormIndividual> pop;
    pop.reserve(opt.outer_population);
    for (std::size_t i = 0; i < opt.outer_population; ++i) {
        const SieveForm f = detail::random_valid_form(rng);
        pop.push_back(detail::FormIndividual{detail::encode_form(f), f, {}});
    }

    SieveForm best_form{6, 1};
    detail::FormScore best_score;
    bool have_best = false;
    for (u32 g = 0;; ++g) {
        for (auto& ind : pop) {
            ind.fit = evaluate(ind.form);
            if (!have_best || ind.fit.better_than(best_score)) {
                best_form = ind.form;
                best_score = ind.fit;
                have_best = true;
            }
        }
        if (g + 1 == opt.outer_generations) break;

        std::vector<detail::FormIndividual> next;
        next.reserve(opt.outer_population);
        while (next.size() < opt.outer_population) {
            const auto& pa = tournament_select(pop, opt.outer_tournament, rng);
            const auto& pb = tournament_select(pop, opt.outer_tournament, rng);
            auto [c1, c2] = uniform_crossover(pa.chrom, pb.chrom, opt.outer_crossover, rng);
            for (Chromosome* c : {&c1, &c2}) {
                if (next.size() == opt.outer_population) break;
                Chromosome child = mutate(*c, opt.outer_mutation, rng);
                const SieveForm f = detail::decode_form_repair(child, rng);
                next.push_back(detail::FormIndividual{child, f, {}});
            }
        }
        pop.swap(next);
    }
    return best_form;
}

} // namespace gafactor
