#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "genesis/neuro.hpp"
#include "genesis/topology.hpp"
#include "genesis/workload.hpp"

namespace genesis {

struct OrderedVnf {
    VnfKind kind{VnfKind::LoadBalancer};
    int instance{1};
    double priority{0.0};
};

/// Chain order for one request: a permutation of its VNFs honouring the
/// strict-order subsequence.
struct ForwardingGraph {
    int sfcr_id{0};
    std::vector<OrderedVnf> ordered_vnfs;
};

struct Placement {
    VnfKind kind{VnfKind::LoadBalancer};
    int instance{1};
    std::optional<int> host;  // nullopt = rejected by the mean-host guard
};

struct PartialEmbeddingGraph {
    ForwardingGraph fg;
    std::vector<Placement> placements;  // aligned 1:1 with fg.ordered_vnfs
    std::vector<double> mean_hosts;     // predictor outputs, diagnostics

    bool all_placed() const;
};

enum class EmbedStatus { Embedded, Rejected };

/// Fully routed chain: one path per consecutive host pair, plus
/// ingress -> first host and last host -> egress.
struct EmbeddingGraph {
    PartialEmbeddingGraph peg;
    std::vector<std::vector<NodeId>> paths;
    EmbedStatus status{EmbedStatus::Rejected};

    int sfcr_id() const { return peg.fg.sfcr_id; }
};

/// Everything a decode needs besides the genome. The anchor host's edge
/// switch acts as both chain ingress and egress.
struct DecodeContext {
    const Topology* topo{nullptr};
    const PredictorSet* predictors{nullptr};
    EncodingUniverse universe;
    double placement_sigma{2.0};
    int anchor_host{0};

    NodeId anchor_switch() const { return topo->edge_switch_of(anchor_host); }
};

/// Strict-order repair: walk the strict sequence; any member found before the
/// previous one is pulled out and re-inserted at the previous member's index.
/// Exposed separately so it can be driven with hand-set priorities.
void apply_strict_order(std::vector<OrderedVnf>& ordered, const std::vector<VnfKind>& strict);

/// Chain composition: priorities from HVPP, stable descending sort (ties keep
/// request order), then strict-order repair.
ForwardingGraph compose_chain(const SfcRequest& sfcr, const Genome& genome,
                              const DecodeContext& ctx);

/// floor / modulo / negative-shift mapping from a Gaussian draw to a host index.
int host_from_sample(double sample, int n_hosts);

/// VNF placement: per VNF, a mean host from HMHP; non-positive means reject,
/// otherwise the host comes from floor(Normal(mean, sigma^2)) wrapped into
/// [0, n_hosts).
PartialEmbeddingGraph embed_vnfs(const ForwardingGraph& fg, const Genome& genome,
                                 const DecodeContext& ctx, std::mt19937_64& rng);

/// Best-first path search between two nodes, ordered by
/// g + h where both edge costs and the heuristic are HLCP outputs mapped to
/// [0, 2] via 1 + sin(.). Hosts other than the start node are not expanded;
/// closed nodes re-open on a strict total-cost improvement. Ties in the open
/// set resolve to the lowest (kind, index) node.
/// Throws std::runtime_error if dst is unreachable.
std::vector<NodeId> find_path(int peg_id, NodeId src, NodeId dst, const Genome& genome,
                              const DecodeContext& ctx);

/// Link embedding: routes ingress -> hosts... -> egress with find_path. A PEG
/// with any rejected placement yields a Rejected graph with no paths.
EmbeddingGraph embed_links(const PartialEmbeddingGraph& peg, const Genome& genome,
                           const DecodeContext& ctx);

/// Decode seed for an individual: a function of the run seed and the genome
/// bits, so identical genomes always decode identically within a run.
std::uint64_t decode_seed(std::uint64_t run_seed, const Genome& genome);

/// Full decode: compose -> place -> route for each request, in order.
std::vector<EmbeddingGraph> decode(const Genome& genome, const std::vector<SfcRequest>& requests,
                                   const DecodeContext& ctx, std::uint64_t seed);

/// One record per SFCR: order, placements, paths.
void dump_embeddings(const std::vector<EmbeddingGraph>& egs, std::ostream& os);

}  // namespace genesis
