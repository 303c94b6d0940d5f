#include "genesis/baselines.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace genesis {

int BinaryGenome::host_of_row(int r) const {
    int found = -1;
    for (int c = 0; c < cols; ++c) {
        if (at(r, c)) {
            if (found >= 0) return -1;
            found = c;
        }
    }
    return found;
}

bool binary_genome_less(const BinaryGenome& a, const BinaryGenome& b) {
    return a.bits < b.bits;
}

int total_vnf_rows(const std::vector<SfcRequest>& requests) {
    int rows = 0;
    for (const SfcRequest& r : requests) rows += static_cast<int>(r.vnfs.size());
    return rows;
}

BinaryGenome random_binary_genome(int rows, int cols, std::mt19937_64& rng) {
    BinaryGenome g{rows, cols, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0)};
    std::uniform_int_distribution<int> pick(0, cols - 1);
    for (int r = 0; r < rows; ++r) g.set(r, pick(rng), 1);
    return g;
}

void repair_rows(BinaryGenome& g, std::mt19937_64& rng) {
    std::vector<int> set_cols;
    for (int r = 0; r < g.rows; ++r) {
        set_cols.clear();
        for (int c = 0; c < g.cols; ++c)
            if (g.at(r, c)) set_cols.push_back(c);
        if (set_cols.size() == 1) continue;
        int keep;
        if (set_cols.empty()) {
            keep = std::uniform_int_distribution<int>(0, g.cols - 1)(rng);
        } else {
            keep = set_cols[std::uniform_int_distribution<std::size_t>(0, set_cols.size() - 1)(rng)];
        }
        for (int c = 0; c < g.cols; ++c) g.set(r, c, c == keep ? 1 : 0);
    }
}

std::pair<BinaryGenome, BinaryGenome> two_point_row_crossover(const BinaryGenome& a,
                                                              const BinaryGenome& b,
                                                              std::mt19937_64& rng) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("crossover requires same-shape genomes");
    std::uniform_int_distribution<int> cut(0, a.rows);
    int cut1 = cut(rng);
    int cut2 = cut(rng);
    if (cut1 > cut2) std::swap(cut1, cut2);
    BinaryGenome c1 = a;
    BinaryGenome c2 = b;
    for (int r = cut1; r < cut2; ++r) {
        for (int c = 0; c < a.cols; ++c) {
            c1.set(r, c, b.at(r, c));
            c2.set(r, c, a.at(r, c));
        }
    }
    return {c1, c2};
}

BinaryGenome bitflip_mutate(const BinaryGenome& g, double rate, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    BinaryGenome out = g;
    for (std::uint8_t& bit : out.bits)
        if (uni(rng) < rate) bit ^= 1;
    return out;
}

std::vector<NodeId> dijkstra_hop_path(const Topology& topo, NodeId src, NodeId dst,
                                      const std::function<bool(int)>& usable) {
    if (src == dst) return {src};
    std::map<NodeId, int> dist;
    std::map<NodeId, NodeId> parent;
    std::set<std::pair<int, NodeId>> open;
    dist[src] = 0;
    open.insert({0, src});
    while (!open.empty()) {
        const auto [d, curr] = *open.begin();
        open.erase(open.begin());
        if (curr == dst) {
            std::vector<NodeId> path{curr};
            NodeId walk = curr;
            while (parent.count(walk)) {
                walk = parent.at(walk);
                path.push_back(walk);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        if (d != dist.at(curr)) continue;
        // hosts other than the source do not forward traffic
        if (curr.kind == NodeKind::Host && curr != src) continue;
        for (const auto& [nb, link_index] : topo.adjacent(curr)) {
            if (usable && !usable(link_index)) continue;
            const int nd = d + 1;
            auto it = dist.find(nb);
            if (it == dist.end() || nd < it->second) {
                if (it != dist.end()) open.erase({it->second, nb});
                dist[nb] = nd;
                parent[nb] = curr;
                open.insert({nd, nb});
            }
        }
    }
    return {};
}

std::vector<EmbeddingGraph> bega_decode(const BinaryGenome& g,
                                        const std::vector<SfcRequest>& requests,
                                        const Topology& topo, int anchor_host) {
    if (g.rows != total_vnf_rows(requests))
        throw std::invalid_argument("binary genome row count does not match the workload");
    const NodeId anchor = topo.edge_switch_of(anchor_host);
    std::vector<EmbeddingGraph> egs;
    egs.reserve(requests.size());
    int row = 0;
    for (const SfcRequest& r : requests) {
        EmbeddingGraph eg;
        eg.peg.fg.sfcr_id = r.id;
        std::vector<NodeId> waypoints{anchor};
        for (VnfKind v : r.vnfs) {
            const int h = g.host_of_row(row++);
            if (h < 0) throw std::invalid_argument("binary genome row is not one-hot");
            eg.peg.fg.ordered_vnfs.push_back({v, 1, 0.0});
            eg.peg.placements.push_back({v, 1, h});
            eg.peg.mean_hosts.push_back(static_cast<double>(h));
            waypoints.push_back(host(h));
        }
        waypoints.push_back(anchor);
        bool routed = true;
        for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
            std::vector<NodeId> path = dijkstra_hop_path(topo, waypoints[i], waypoints[i + 1]);
            if (path.empty()) {
                routed = false;
                break;
            }
            eg.paths.push_back(std::move(path));
        }
        if (!routed) eg.paths.clear();
        eg.status = routed ? EmbedStatus::Embedded : EmbedStatus::Rejected;
        egs.push_back(std::move(eg));
    }
    return egs;
}

namespace {

struct BegaPolicy {
    using Genome = BinaryGenome;

    const ScenarioContext* scenario;
    int rows;
    int cols;
    double mutation_rate;  // 1 / matrix size

    Genome random_genome(std::mt19937_64& rng) const {
        return random_binary_genome(rows, cols, rng);
    }
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                        std::mt19937_64& rng) const {
        return two_point_row_crossover(a, b, rng);
    }
    Genome mutate(const Genome& g, std::mt19937_64& rng) const {
        Genome out = bitflip_mutate(g, mutation_rate, rng);
        repair_rows(out, rng);
        return out;
    }
    EvaluationResult evaluate(const Genome& g, EvalMode mode) const {
        const std::vector<EmbeddingGraph> egs =
            bega_decode(g, scenario->requests, *scenario->topo, scenario->anchor_host);
        return evaluate_embeddings(egs, *scenario->topo, scenario->pattern, scenario->catalog,
                                   scenario->consts, mode);
    }
    bool less(const Genome& a, const Genome& b) const { return binary_genome_less(a, b); }
};

}  // namespace

EvolveOutcome<BinaryGenome> bega_evolve(const EvolutionConfig& cfg,
                                        const ScenarioContext& scenario) {
    const int rows = total_vnf_rows(scenario.requests);
    const int cols = scenario.topo->host_count();
    BegaPolicy policy{&scenario, rows, cols, 1.0 / (static_cast<double>(rows) * cols)};
    return hybrid_evolve(cfg, policy);
}

GreedyOutcome gda_embed(const ScenarioContext& scenario) {
    const Topology& topo = *scenario.topo;
    const double peak_rate = scenario.pattern.peak();
    const double flow = scenario.consts.flow_mb_per_request * peak_rate;
    const NodeId anchor = topo.edge_switch_of(scenario.anchor_host);

    std::vector<double> cpu_left(topo.host_count(), topo.host_cpu());
    std::vector<double> bw_left;
    bw_left.reserve(topo.links().size());
    for (const Link& l : topo.links()) bw_left.push_back(l.bandwidth_mbps);

    // Requests in arrival order; results reported back in id order.
    std::vector<const SfcRequest*> by_arrival;
    for (const SfcRequest& r : scenario.requests) by_arrival.push_back(&r);
    std::sort(by_arrival.begin(), by_arrival.end(),
              [](const SfcRequest* a, const SfcRequest* b) {
                  return a->arrival_rank < b->arrival_rank;
              });

    GreedyOutcome out;
    std::map<int, EmbeddingGraph> embedded;  // sfcr_id -> graph
    for (const SfcRequest* rp : by_arrival) {
        const SfcRequest& r = *rp;
        std::vector<double> cpu_snapshot = cpu_left;
        std::vector<double> bw_snapshot = bw_left;

        EmbeddingGraph eg;
        eg.peg.fg.sfcr_id = r.id;
        bool ok = true;
        std::vector<NodeId> waypoints{anchor};
        for (VnfKind v : r.vnfs) {
            const double demand = scenario.catalog.demand(v, peak_rate);
            int best = -1;
            for (int h = 0; h < topo.host_count(); ++h)
                if (cpu_left[h] >= demand && (best < 0 || cpu_left[h] > cpu_left[best]))
                    best = h;  // most remaining CPU; scan order breaks ties low
            if (best < 0) {
                ok = false;
                break;
            }
            cpu_left[best] -= demand;
            eg.peg.fg.ordered_vnfs.push_back({v, 1, 0.0});
            eg.peg.placements.push_back({v, 1, best});
            eg.peg.mean_hosts.push_back(static_cast<double>(best));
            waypoints.push_back(host(best));
        }
        if (ok) {
            waypoints.push_back(anchor);
            for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
                std::vector<NodeId> path =
                    dijkstra_hop_path(topo, waypoints[i], waypoints[i + 1],
                                      [&](int l) { return bw_left[l] >= flow; });
                if (path.empty()) {
                    ok = false;
                    break;
                }
                for (std::size_t s = 0; s + 1 < path.size(); ++s)
                    bw_left[topo.link_between(path[s], path[s + 1])] -= flow;
                eg.paths.push_back(std::move(path));
            }
        }
        if (!ok) {
            cpu_left = std::move(cpu_snapshot);  // release anything reserved
            bw_left = std::move(bw_snapshot);
            continue;
        }
        eg.status = EmbedStatus::Embedded;
        embedded.emplace(r.id, std::move(eg));
    }

    std::vector<int> accepted_ids;
    for (const SfcRequest& r : scenario.requests) {
        auto it = embedded.find(r.id);
        if (it != embedded.end()) {
            accepted_ids.push_back(static_cast<int>(out.egs.size()));
            out.egs.push_back(std::move(it->second));
        } else {
            EmbeddingGraph rejected;
            rejected.peg.fg.sfcr_id = r.id;
            rejected.status = EmbedStatus::Rejected;
            out.egs.push_back(std::move(rejected));
        }
    }
    out.accepted_ids = accepted_ids;
    out.result = simulate_latency(out.egs, accepted_ids,
                                  static_cast<int>(scenario.requests.size()), topo,
                                  scenario.pattern, scenario.catalog, scenario.consts);
    out.evals_online = 1;
    return out;
}

}  // namespace genesis
