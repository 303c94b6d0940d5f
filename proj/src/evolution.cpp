#include "genesis/evolution.hpp"

#include <cmath>
#include <limits>

namespace genesis {

std::vector<Individual> init_population(const EvolutionConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    return init_population(cfg, rng);
}

std::vector<Individual> init_population(const EvolutionConfig& cfg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    std::vector<Individual> pop(cfg.population_size);
    for (Individual& ind : pop)
        for (int i = 0; i < kGenomeLength; ++i) ind.genome[i] = uni(rng);
    return pop;
}

std::pair<Genome, Genome> blend_crossover(const Genome& a, const Genome& b, double alpha,
                                          std::mt19937_64& rng) {
    if (alpha < 0.0) throw std::invalid_argument("blx alpha must be >= 0");
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Genome c1, c2;
    for (int i = 0; i < kGenomeLength; ++i) {
        const double gamma = (1.0 + 2.0 * alpha) * uni(rng) - alpha;
        c1[i] = (1.0 - gamma) * a[i] + gamma * b[i];
        c2[i] = gamma * a[i] + (1.0 - gamma) * b[i];
    }
    return {c1, c2};
}

Genome mutate(const Genome& g, double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) throw std::invalid_argument("mutation sigma must be > 0");
    std::normal_distribution<double> gauss(0.0, sigma);
    Genome out = g;
    for (int i = 0; i < kGenomeLength; ++i) out[i] += gauss(rng);
    return out;
}

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    // [0] acceptance ratio, maximised; [1] latency, minimised
    if (a[0] < b[0] || a[1] > b[1]) return false;
    return a[0] > b[0] || a[1] < b[1];
}

std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<ObjectivePair>& objectives) {
    const int n = static_cast<int>(objectives.size());
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<int>> fronts(1);

    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q]))
                dominated[p].push_back(q);
            else if (dominates(objectives[q], objectives[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) fronts[0].push_back(p);
    }
    std::size_t f = 0;
    while (!fronts[f].empty()) {
        std::vector<int> next;
        for (int p : fronts[f])
            for (int q : dominated[p])
                if (--domination_count[q] == 0) next.push_back(q);
        fronts.push_back(std::move(next));
        ++f;
    }
    fronts.pop_back();
    return fronts;
}

std::vector<double> crowding_distances(const std::vector<ObjectivePair>& objectives,
                                       const std::vector<int>& front) {
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    for (int obj = 0; obj < 2; ++obj) {
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (objectives[front[x]][obj] != objectives[front[y]][obj])
                return objectives[front[x]][obj] < objectives[front[y]][obj];
            return front[x] < front[y];  // deterministic among equal values
        });
        const double span =
            objectives[front[order.back()]][obj] - objectives[front[order.front()]][obj];
        if (span <= 0.0) continue;  // degenerate objective: no boundary to protect
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i + 1 < m; ++i)
            dist[order[i]] += (objectives[front[order[i + 1]]][obj] -
                               objectives[front[order[i - 1]]][obj]) /
                              span;
    }
    return dist;
}

namespace {

struct GenesisPolicy {
    using Genome = genesis::Genome;

    const ScenarioContext* scenario;
    const EvolutionConfig* cfg;
    std::uint64_t run_seed;

    Genome random_genome(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
        Genome g;
        for (int i = 0; i < kGenomeLength; ++i) g[i] = uni(rng);
        return g;
    }
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                        std::mt19937_64& rng) const {
        return blend_crossover(a, b, cfg->blx_alpha, rng);
    }
    Genome mutate(const Genome& g, std::mt19937_64& rng) const {
        return genesis::mutate(g, cfg->mutation_sigma, rng);
    }
    EvaluationResult evaluate(const Genome& g, EvalMode mode) const {
        return evaluate_genome(g, *scenario, run_seed, mode);
    }
    bool less(const Genome& a, const Genome& b) const { return genome_less(a, b); }
};

}  // namespace

EvaluationResult evaluate_genome(const Genome& genome, const ScenarioContext& scenario,
                                 std::uint64_t run_seed, EvalMode mode) {
    const DecodeContext ctx = scenario.decode_context();
    const std::vector<EmbeddingGraph> egs =
        decode(genome, scenario.requests, ctx, decode_seed(run_seed, genome));
    return evaluate_embeddings(egs, *scenario.topo, scenario.pattern, scenario.catalog,
                               scenario.consts, mode);
}

EvolveOutcome<Genome> evolve_hybrid(const EvolutionConfig& cfg, const ScenarioContext& scenario) {
    GenesisPolicy policy{&scenario, &cfg, cfg.seed};
    return hybrid_evolve(cfg, policy);
}

}  // namespace genesis
