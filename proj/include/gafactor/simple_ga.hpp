#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "gafactor/ga_core.hpp"
#include "gafactor/numtheory.hpp"

namespace gafactor {

// Outcome of one factorization run. `generations` is the generation index
// at which the solution appeared (0 = initial population); on failure it
// equals the configured cap.
struct RunReport {
    u128 m = 0;
    bool success = false;
    std::optional<u64> factor;
    std::optional<u128> cofactor;
    u32 generations = 0;
    double elapsed_s = 0.0;
    u64 seed = 0;
};

/// Initial population: n chromosomes decoding to distinct values drawn
/// uniformly without replacement from the problem's search interval.
inline std::vector<Chromosome> seed_population(const FactorizationProblem& problem, std::size_t n,
                                               Rng& rng) {
    const unsigned width = bit_length(problem.upper);
    std::vector<Chromosome> pop;
    pop.reserve(n);
    for (u64 v : sample_distinct(n, problem.lower, problem.upper, rng))
        pop.push_back(encode(v, width));
    return pop;
}

namespace detail {

class RunTimer {
public:
    RunTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Factor found: divisibility is re-verified with exact arithmetic, never
// trusted from fitness bookkeeping.
inline RunReport success_report(u128 m, u64 factor, u32 generation, u64 seed, double elapsed) {
    const u128 cofactor = m / factor;
    if (factor < 2 || cofactor * factor != m)
        throw std::logic_error("candidate reported as divisor fails verification");
    RunReport r;
    r.m = m;
    r.success = true;
    r.factor = factor;
    r.cofactor = cofactor;
    r.generations = generation;
    r.elapsed_s = elapsed;
    r.seed = seed;
    return r;
}

} // namespace detail

/// The Simple GA factorizer: evolves bit-string candidates in the shrunk
/// interval under remainder fitness until a divisor appears or the
/// generation cap is reached.
inline RunReport run_simple_ga(const FactorizationProblem& problem, const GaConfig& cfg) {
    cfg.validate();
    detail::RunTimer timer;
    Rng rng(cfg.seed);
    const u128 m = problem.m;

    std::vector<Scored> pop;
    pop.reserve(cfg.population);
    for (Chromosome c : seed_population(problem, cfg.population, rng)) {
        const u64 v = c.bits;
        pop.push_back(Scored{c, v, fitness_of(m, v)});
    }

    std::vector<Scored> next;
    next.reserve(cfg.population);
    for (u32 generation = 0;; ++generation) {
        for (const Scored& s : pop) {
            if (s.fit.is_solution)
                return detail::success_report(m, s.value, generation, cfg.seed, timer.seconds());
        }
        if (generation == cfg.max_generations) break;

        next.clear();
        while (next.size() < cfg.population) {
            const Scored& pa = tournament_select(pop, cfg.tournament_size, rng);
            const Scored& pb = tournament_select(pop, cfg.tournament_size, rng);
            auto [c1, c2] = uniform_crossover(pa.chrom, pb.chrom, cfg.crossover_rate, rng);
            for (Chromosome* c : {&c1, &c2}) {
                if (next.size() == cfg.population) break; // odd population: drop one
                Chromosome child = mutate(*c, cfg.mutation_rate, rng);
                const u64 v = decode_repair(child, problem.lower, problem.upper, rng);
                next.push_back(Scored{child, v, fitness_of(m, v)});
            }
        }
        pop.swap(next);
    }

    RunReport r;
    r.m = m;
    r.generations = cfg.max_generations;
    r.elapsed_s = timer.seconds();
    r.seed = cfg.seed;
    return r;
}

} // namespace gafactor
