#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "genesis/evolution.hpp"

namespace genesis {

/// Placement matrix: one row per VNF instance across all requests, one column
/// per host. A repaired row carries exactly one set bit.
struct BinaryGenome {
    int rows{0};
    int cols{0};
    std::vector<std::uint8_t> bits;  // row-major

    std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * cols + c]; }
    void set(int r, int c, std::uint8_t v) { bits[static_cast<std::size_t>(r) * cols + c] = v; }
    /// Column of the single set bit, or -1 if the row is not one-hot.
    int host_of_row(int r) const;
};

bool binary_genome_less(const BinaryGenome& a, const BinaryGenome& b);

/// Total VNF instances across the requests (the row count).
int total_vnf_rows(const std::vector<SfcRequest>& requests);

BinaryGenome random_binary_genome(int rows, int cols, std::mt19937_64& rng);

/// One-hot row repair: multiple set bits keep one chosen uniformly; an
/// all-zero row gets a uniform random bit.
void repair_rows(BinaryGenome& g, std::mt19937_64& rng);

/// Swaps the row range [cut1, cut2) between the parents.
std::pair<BinaryGenome, BinaryGenome> two_point_row_crossover(const BinaryGenome& a,
                                                              const BinaryGenome& b,
                                                              std::mt19937_64& rng);

/// Independent per-bit flips.
BinaryGenome bitflip_mutate(const BinaryGenome& g, double rate, std::mt19937_64& rng);

/// Hop-count shortest path, lowest-(kind,index) tie-break. `usable` filters
/// links; an empty result means dst is unreachable through usable links.
std::vector<NodeId> dijkstra_hop_path(const Topology& topo, NodeId src, NodeId dst,
                                      const std::function<bool(int)>& usable = {});

/// Decodes the placement matrix: template chain order as given, hosts from
/// the rows, paths by hop-count Dijkstra through the anchor switch.
std::vector<EmbeddingGraph> bega_decode(const BinaryGenome& g,
                                        const std::vector<SfcRequest>& requests,
                                        const Topology& topo, int anchor_host);

/// Binary-encoded GA: same hybrid loop, thresholds and NSGA-II selection as
/// the real-coded engine; only the representation and operators differ.
EvolveOutcome<BinaryGenome> bega_evolve(const EvolutionConfig& cfg,
                                        const ScenarioContext& scenario);

struct GreedyOutcome {
    std::vector<EmbeddingGraph> egs;
    std::vector<int> accepted_ids;
    EvaluationResult result;
    std::uint64_t evals_online{1};
};

/// Greedy one-pass embedding: requests in arrival order, each VNF on the
/// fittest host (most remaining CPU) that can take its peak demand, segments
/// routed by Dijkstra over links with enough remaining bandwidth. A request
/// failing any step is rejected and releases whatever it reserved.
GreedyOutcome gda_embed(const ScenarioContext& scenario);

}  // namespace genesis
