#include "genesis/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace genesis {

bool PartialEmbeddingGraph::all_placed() const {
    return std::all_of(placements.begin(), placements.end(),
                       [](const Placement& p) { return p.host.has_value(); });
}

void apply_strict_order(std::vector<OrderedVnf>& ordered, const std::vector<VnfKind>& strict) {
    int last_index = -1;
    for (VnfKind sv : strict) {
        auto it = std::find_if(ordered.begin(), ordered.end(),
                               [sv](const OrderedVnf& v) { return v.kind == sv; });
        if (it == ordered.end()) continue;  // strict entry not part of this chain
        int index = static_cast<int>(it - ordered.begin());
        if (index < last_index) {
            OrderedVnf moved = *it;
            ordered.erase(it);
            index = last_index;
            ordered.insert(ordered.begin() + index, moved);
        }
        last_index = index;
    }
}

ForwardingGraph compose_chain(const SfcRequest& sfcr, const Genome& genome,
                              const DecodeContext& ctx) {
    ForwardingGraph fg;
    fg.sfcr_id = sfcr.id;
    fg.ordered_vnfs.reserve(sfcr.vnfs.size());
    const GenomeSlice genes = hvpp_slice(genome);
    for (VnfKind v : sfcr.vnfs) {
        const double priority =
            forward(ctx.predictors->hvpp, genes, encode_hvpp_input(sfcr.id, v, ctx.universe));
        fg.ordered_vnfs.push_back({v, 1, priority});
    }
    std::stable_sort(fg.ordered_vnfs.begin(), fg.ordered_vnfs.end(),
                     [](const OrderedVnf& a, const OrderedVnf& b) { return a.priority > b.priority; });
    apply_strict_order(fg.ordered_vnfs, sfcr.strict_order);
    return fg;
}

int host_from_sample(double sample, int n_hosts) {
    long long h = static_cast<long long>(std::floor(sample));
    h %= n_hosts;
    if (h < 0) h += n_hosts;
    return static_cast<int>(h);
}

PartialEmbeddingGraph embed_vnfs(const ForwardingGraph& fg, const Genome& genome,
                                 const DecodeContext& ctx, std::mt19937_64& rng) {
    PartialEmbeddingGraph peg;
    peg.fg = fg;
    const GenomeSlice genes = hmhp_slice(genome);
    const int n_hosts = ctx.universe.n_hosts;
    for (const OrderedVnf& v : fg.ordered_vnfs) {
        const double mean_host =
            forward(ctx.predictors->hmhp, genes,
                    encode_hmhp_input(fg.sfcr_id, v.kind, v.instance, ctx.universe));
        peg.mean_hosts.push_back(mean_host);
        Placement p{v.kind, v.instance, std::nullopt};
        if (mean_host > 0.0) {
            std::normal_distribution<double> gauss(mean_host, ctx.placement_sigma);
            p.host = host_from_sample(gauss(rng), n_hosts);
        }
        peg.placements.push_back(p);
    }
    return peg;
}

namespace {

// Edge cost / heuristic: HLCP emits sin(.) in [-1, 1]; shifting by +1 keeps
// costs non-negative so the re-opening search terminates.
double hlcp_cost(int peg_id, NodeId from, NodeId to, const Genome& genome,
                 const DecodeContext& ctx) {
    return 1.0 + forward(ctx.predictors->hlcp, hlcp_slice(genome),
                         encode_hlcp_input(peg_id, from, to, *ctx.topo, ctx.universe));
}

struct SearchState {
    double g{0.0};
    double f{0.0};
    NodeId parent;
    bool has_parent{false};
};

}  // namespace

std::vector<NodeId> find_path(int peg_id, NodeId src, NodeId dst, const Genome& genome,
                              const DecodeContext& ctx) {
    const Topology& topo = *ctx.topo;
    if (!topo.contains(src) || !topo.contains(dst))
        throw std::out_of_range("path endpoint outside topology");
    if (src == dst) return {src};

    std::map<NodeId, SearchState> state;
    std::map<NodeId, double> closed;                 // node -> total cost when closed
    std::set<std::pair<double, NodeId>> open;        // ordered by (f, node id)

    state[src] = {0.0, hlcp_cost(peg_id, src, dst, genome, ctx), {}, false};
    open.insert({state[src].f, src});

    int index = 0;
    while (!open.empty()) {
        const auto [f_curr, curr] = *open.begin();
        open.erase(open.begin());

        if (curr == dst) {
            std::vector<NodeId> path{curr};
            NodeId walk = curr;
            while (state[walk].has_parent) {
                walk = state[walk].parent;
                path.push_back(walk);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }

        // Hosts are endpoints, not forwarders: only the start node may expand
        // if it happens to be a host.
        if (index == 0 || curr.kind != NodeKind::Host) {
            const double g_curr = state[curr].g;
            for (const auto& [nb, link_index] : topo.adjacent(curr)) {
                (void)link_index;
                const double g_new = g_curr + hlcp_cost(peg_id, curr, nb, genome, ctx);
                const double f_new = g_new + hlcp_cost(peg_id, nb, dst, genome, ctx);
                auto closed_it = closed.find(nb);
                if (closed_it != closed.end()) {
                    if (f_new < closed_it->second) {  // re-open on strict improvement
                        closed.erase(closed_it);
                        state[nb] = {g_new, f_new, curr, true};
                        open.insert({f_new, nb});
                    }
                    continue;
                }
                auto state_it = state.find(nb);
                if (state_it == state.end()) {
                    state[nb] = {g_new, f_new, curr, true};
                    open.insert({f_new, nb});
                } else if (f_new < state_it->second.f) {
                    open.erase({state_it->second.f, nb});
                    state_it->second = {g_new, f_new, curr, true};
                    open.insert({f_new, nb});
                }
            }
        }
        ++index;
        closed[curr] = state[curr].f;
    }
    throw std::runtime_error("no path from " + to_string(src) + " to " + to_string(dst));
}

EmbeddingGraph embed_links(const PartialEmbeddingGraph& peg, const Genome& genome,
                           const DecodeContext& ctx) {
    EmbeddingGraph eg;
    eg.peg = peg;
    if (!peg.all_placed()) {
        eg.status = EmbedStatus::Rejected;
        return eg;
    }
    const NodeId anchor = ctx.anchor_switch();
    std::vector<NodeId> waypoints{anchor};
    for (const Placement& p : peg.placements) waypoints.push_back(host(*p.host));
    waypoints.push_back(anchor);

    const int peg_id = peg.fg.sfcr_id;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        eg.paths.push_back(find_path(peg_id, waypoints[i], waypoints[i + 1], genome, ctx));
    eg.status = EmbedStatus::Embedded;
    return eg;
}

std::uint64_t decode_seed(std::uint64_t run_seed, const Genome& genome) {
    std::uint64_t h = mix_seed(run_seed, 0x5FCDECull);
    for (int i = 0; i < kGenomeLength; ++i)
        h = mix_seed(h, std::bit_cast<std::uint64_t>(genome[i]));
    return h;
}

std::vector<EmbeddingGraph> decode(const Genome& genome, const std::vector<SfcRequest>& requests,
                                   const DecodeContext& ctx, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<EmbeddingGraph> egs;
    egs.reserve(requests.size());
    for (const SfcRequest& r : requests) {
        const ForwardingGraph fg = compose_chain(r, genome, ctx);
        const PartialEmbeddingGraph peg = embed_vnfs(fg, genome, ctx, rng);
        egs.push_back(embed_links(peg, genome, ctx));
    }
    return egs;
}

void dump_embeddings(const std::vector<EmbeddingGraph>& egs, std::ostream& os) {
    for (const EmbeddingGraph& eg : egs) {
        os << "sfcr " << eg.sfcr_id() << ' '
           << (eg.status == EmbedStatus::Embedded ? "embedded" : "rejected") << '\n';
        os << "  order:";
        for (const OrderedVnf& v : eg.peg.fg.ordered_vnfs) os << ' ' << to_string(v.kind);
        os << '\n';
        os << "  placements:";
        for (const Placement& p : eg.peg.placements) {
            os << ' ' << to_string(p.kind) << "->";
            if (p.host)
                os << 'h' << *p.host;
            else
                os << "none";
        }
        os << '\n';
        for (const auto& path : eg.paths) {
            os << "  path:";
            for (NodeId n : path) os << ' ' << to_string(n);
            os << '\n';
        }
    }
}

}  // namespace genesis
