#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "genesis/netsim.hpp"
#include "genesis/neuro.hpp"
#include "genesis/solvers.hpp"

namespace genesis {

template <typename G>
struct IndividualT {
    G genome{};
    std::optional<EvaluationResult> fitness;
    int rank{-1};          // Pareto front ordinal, valid after selection
    double crowding{0.0};  // valid after selection
};

using Individual = IndividualT<Genome>;

struct EvolutionConfig {
    int population_size{100};
    int max_generations{500};
    double min_acceptance_ratio{1.0};
    double max_avg_latency_ms{100.0};
    double blx_alpha{0.5};
    double mutation_sigma{std::numbers::pi};
    std::uint64_t seed{1};
};

/// Uniform(-pi, pi) genomes, reproducible from cfg.seed.
std::vector<Individual> init_population(const EvolutionConfig& cfg);
std::vector<Individual> init_population(const EvolutionConfig& cfg, std::mt19937_64& rng);

/// BLX-alpha: per gene, gamma = (1+2a)u - a with u ~ U(0,1); the children take
/// gamma and (1-gamma) mixes, landing in the alpha-widened parent interval.
std::pair<Genome, Genome> blend_crossover(const Genome& a, const Genome& b, double alpha,
                                          std::mt19937_64& rng);

/// Additive Normal(0, sigma) noise on every gene, no clamping.
Genome mutate(const Genome& g, double sigma, std::mt19937_64& rng);

/// Objective pairs are (acceptance ratio to maximise, latency to minimise).
using ObjectivePair = std::array<double, 2>;

bool dominates(const ObjectivePair& a, const ObjectivePair& b);

/// Deb's fast non-dominated sort; fronts hold indices into `objectives`.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<ObjectivePair>& objectives);

/// Crowding distances for one front; boundary points get +infinity.
std::vector<double> crowding_distances(const std::vector<ObjectivePair>& objectives,
                                       const std::vector<int>& front);

namespace detail {

template <typename G>
std::vector<ObjectivePair> objectives_of(const std::vector<IndividualT<G>>& pool) {
    std::vector<ObjectivePair> obj;
    obj.reserve(pool.size());
    for (const auto& ind : pool) {
        if (!ind.fitness) throw std::logic_error("nsga2_select requires evaluated individuals");
        obj.push_back({ind.fitness->acceptance_ratio, ind.fitness->avg_latency_ms});
    }
    return obj;
}

}  // namespace detail

/// NSGA-II environmental selection over the combined pool: fill by ascending
/// rank; the partial front is admitted by descending crowding distance with a
/// final genome-lexicographic tie-break.
template <typename G, typename Less>
std::vector<IndividualT<G>> nsga2_select(const std::vector<IndividualT<G>>& pool,
                                         std::size_t target, Less genome_lt) {
    const std::vector<ObjectivePair> obj = detail::objectives_of(pool);
    const std::vector<std::vector<int>> fronts = fast_nondominated_sort(obj);

    std::vector<IndividualT<G>> next;
    next.reserve(target);
    for (std::size_t f = 0; f < fronts.size() && next.size() < target; ++f) {
        const std::vector<int>& front = fronts[f];
        const std::vector<double> crowd = crowding_distances(obj, front);
        std::vector<std::size_t> order(front.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (front.size() > target - next.size()) {
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (crowd[x] != crowd[y]) return crowd[x] > crowd[y];
                return genome_lt(pool[front[x]].genome, pool[front[y]].genome);
            });
        }
        for (std::size_t i : order) {
            if (next.size() == target) break;
            IndividualT<G> ind = pool[front[i]];
            ind.rank = static_cast<int>(f) + 1;
            ind.crowding = crowd[i];
            next.push_back(std::move(ind));
        }
    }
    return next;
}

inline std::vector<Individual> nsga2_select(const std::vector<Individual>& pool,
                                            std::size_t target) {
    return nsga2_select(pool, target, genome_less);
}

struct GenerationRecord {
    int generation{0};
    EvalMode mode{EvalMode::Surrogate};
    double best_ar{0.0};
    double best_latency{0.0};
    int front1_size{0};
    std::uint64_t evals_surrogate{0};  // cumulative
    std::uint64_t evals_online{0};     // cumulative
    std::vector<ObjectivePair> front1;
};

template <typename G>
struct EvolveOutcome {
    IndividualT<G> best;
    bool converged{false};
    int generations_used{0};
    std::vector<GenerationRecord> history;
    std::uint64_t evals_surrogate{0};
    std::uint64_t evals_online{0};
};

/// Hybrid surrogate/online evolution, generic over the genome representation.
/// A Policy provides:
///   using Genome = ...;
///   Genome random_genome(std::mt19937_64&);
///   std::pair<Genome,Genome> crossover(const Genome&, const Genome&, std::mt19937_64&);
///   Genome mutate(const Genome&, std::mt19937_64&);
///   EvaluationResult evaluate(const Genome&, EvalMode);      // pure
///   bool less(const Genome&, const Genome&) const;           // lexicographic
///
/// Each generation: evaluate with the surrogate, re-check the cheap-threshold
/// passers online (cheapest surrogate latency first) and stop on the first
/// online pass; otherwise vary (shuffled pairing, crossover probability 1,
/// mutation on every offspring) and select elitist NSGA-II from parents plus
/// offspring.
template <typename Policy>
EvolveOutcome<typename Policy::Genome> hybrid_evolve(const EvolutionConfig& cfg, Policy& policy) {
    using G = typename Policy::Genome;
    if (cfg.population_size < 1) throw std::invalid_argument("population_size must be >= 1");

    std::mt19937_64 rng(cfg.seed);
    auto lt = [&policy](const G& a, const G& b) { return policy.less(a, b); };

    EvolveOutcome<G> out;
    std::vector<IndividualT<G>> pop;
    pop.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i)
        pop.push_back({policy.random_genome(rng), std::nullopt, -1, 0.0});

    auto evaluate_all = [&](std::vector<IndividualT<G>>& v) {
        for (auto& ind : v) {
            ind.fitness = policy.evaluate(ind.genome, EvalMode::Surrogate);
            ++out.evals_surrogate;
        }
    };
    evaluate_all(pop);

    auto front1_of = [&](const std::vector<IndividualT<G>>& v) {
        return fast_nondominated_sort(detail::objectives_of(v)).front();
    };
    auto record = [&](int gen, EvalMode mode, const std::vector<IndividualT<G>>& v) {
        GenerationRecord rec;
        rec.generation = gen;
        rec.mode = mode;
        rec.best_ar = 0.0;
        rec.best_latency = v.front().fitness->avg_latency_ms;
        for (const auto& ind : v) {
            rec.best_ar = std::max(rec.best_ar, ind.fitness->acceptance_ratio);
            rec.best_latency = std::min(rec.best_latency, ind.fitness->avg_latency_ms);
        }
        const std::vector<int> front = front1_of(v);
        rec.front1_size = static_cast<int>(front.size());
        for (int i : front)
            rec.front1.push_back({v[i].fitness->acceptance_ratio, v[i].fitness->avg_latency_ms});
        rec.evals_surrogate = out.evals_surrogate;
        rec.evals_online = out.evals_online;
        out.history.push_back(std::move(rec));
    };
    auto best_of = [&](const std::vector<IndividualT<G>>& v) {
        const std::vector<int> front = front1_of(v);
        int best = front.front();
        for (int i : front) {
            const auto& a = v[i].fitness;
            const auto& b = v[best].fitness;
            if (a->acceptance_ratio > b->acceptance_ratio ||
                (a->acceptance_ratio == b->acceptance_ratio &&
                 (a->avg_latency_ms < b->avg_latency_ms ||
                  (a->avg_latency_ms == b->avg_latency_ms && lt(v[i].genome, v[best].genome)))))
                best = i;
        }
        return v[best];
    };

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        // Candidates that clear the thresholds on the cheap model get the
        // expensive check; evolution resumes if none survives it.
        std::vector<int> candidates;
        for (int i = 0; i < static_cast<int>(pop.size()); ++i)
            if (pop[i].fitness->meets(cfg.min_acceptance_ratio, cfg.max_avg_latency_ms))
                candidates.push_back(i);
        std::sort(candidates.begin(), candidates.end(), [&](int x, int y) {
            const auto& a = pop[x].fitness;
            const auto& b = pop[y].fitness;
            if (a->avg_latency_ms != b->avg_latency_ms)
                return a->avg_latency_ms < b->avg_latency_ms;
            if (a->acceptance_ratio != b->acceptance_ratio)
                return a->acceptance_ratio > b->acceptance_ratio;
            return lt(pop[x].genome, pop[y].genome);
        });
        const EvalMode gen_mode = candidates.empty() ? EvalMode::Surrogate : EvalMode::Online;
        for (int ci : candidates) {
            EvaluationResult online = policy.evaluate(pop[ci].genome, EvalMode::Online);
            ++out.evals_online;
            if (online.meets(cfg.min_acceptance_ratio, cfg.max_avg_latency_ms)) {
                out.best = pop[ci];
                out.best.fitness = std::move(online);
                out.converged = true;
                out.generations_used = gen;
                record(gen, EvalMode::Online, pop);
                return out;
            }
        }
        record(gen, gen_mode, pop);
        out.generations_used = gen;
        if (gen == cfg.max_generations) break;

        // Variation: shuffled pairing without replacement, two children per
        // pair, every offspring mutated.
        std::vector<int> perm(pop.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<IndividualT<G>> offspring;
        offspring.reserve(cfg.population_size + 1);
        const int n = static_cast<int>(pop.size());
        for (int i = 0; static_cast<int>(offspring.size()) < cfg.population_size; i += 2) {
            const G& p1 = pop[perm[i % n]].genome;
            const G& p2 = pop[perm[(i + 1) % n]].genome;
            auto [c1, c2] = policy.crossover(p1, p2, rng);
            offspring.push_back({policy.mutate(c1, rng), std::nullopt, -1, 0.0});
            if (static_cast<int>(offspring.size()) < cfg.population_size)
                offspring.push_back({policy.mutate(c2, rng), std::nullopt, -1, 0.0});
        }
        evaluate_all(offspring);

        std::vector<IndividualT<G>> pool = pop;
        pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
        pop = nsga2_select(pool, static_cast<std::size_t>(cfg.population_size), lt);
    }

    out.best = best_of(pop);
    return out;
}

/// A fully specified problem instance shared by all algorithms.
struct ScenarioContext {
    const Topology* topo{nullptr};
    std::vector<SfcRequest> requests;
    TrafficPattern pattern;
    VnfCatalog catalog;
    SimConstants consts;
    const PredictorSet* predictors{nullptr};
    EncodingUniverse universe;
    double placement_sigma{2.0};
    int anchor_host{0};

    DecodeContext decode_context() const {
        return {topo, predictors, universe, placement_sigma, anchor_host};
    }
};

/// Decode + admission + latency model for one real-coded genome.
EvaluationResult evaluate_genome(const Genome& genome, const ScenarioContext& scenario,
                                 std::uint64_t run_seed, EvalMode mode);

/// The real-coded neuroevolution loop (CC/VE/LE decode behind the surrogate
/// and online evaluators).
EvolveOutcome<Genome> evolve_hybrid(const EvolutionConfig& cfg, const ScenarioContext& scenario);

}  // namespace genesis
