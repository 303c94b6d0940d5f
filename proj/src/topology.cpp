#include "genesis/topology.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace genesis {

std::string to_string(NodeId n) {
    static const char prefix[kNodeKindCount] = {'h', 'e', 'a', 'c'};
    return prefix[static_cast<int>(n.kind)] + std::to_string(n.index);
}

int Topology::node_count() const {
    return counts_[0] + counts_[1] + counts_[2] + counts_[3];
}

bool Topology::contains(NodeId n) const {
    return n.index >= 0 && n.index < counts_[static_cast<int>(n.kind)];
}

int Topology::flat_index(NodeId n) const {
    if (!contains(n)) throw std::out_of_range("unknown node " + to_string(n));
    int base = 0;
    for (int kind = 0; kind < static_cast<int>(n.kind); ++kind) base += counts_[kind];
    return base + n.index;
}

NodeId Topology::node_at(int flat) const {
    for (int kind = 0; kind < kNodeKindCount; ++kind) {
        if (flat < counts_[kind]) return {static_cast<NodeKind>(kind), flat};
        flat -= counts_[kind];
    }
    throw std::out_of_range("flat node index out of range");
}

int Topology::link_between(NodeId a, NodeId b) const {
    for (const auto& [nb, link_index] : adjacent(a)) {
        if (nb == b) return link_index;
    }
    return -1;
}

const std::vector<std::pair<NodeId, int>>& Topology::adjacent(NodeId n) const {
    return adjacency_[flat_index(n)];
}

NodeId Topology::edge_switch_of(int host_index) const {
    if (host_index < 0 || host_index >= host_count())
        throw std::out_of_range("unknown node h" + std::to_string(host_index));
    if (k_ > 0) return edge_switch(host_index / (k_ / 2));
    // custom topology: the unique switch neighbour of the host
    for (const auto& [nb, link_index] : adjacent(host(host_index))) {
        (void)link_index;
        if (nb.kind == NodeKind::EdgeSwitch) return nb;
    }
    throw std::logic_error("host has no edge switch");
}

int Topology::pod_of(NodeId n) const {
    if (k_ <= 0) throw std::logic_error("pods are defined only for fat trees");
    const int half = k_ / 2;
    switch (n.kind) {
        case NodeKind::Host: return n.index / (half * half);
        case NodeKind::EdgeSwitch:
        case NodeKind::AggSwitch: return n.index / half;
        case NodeKind::CoreSwitch: throw std::logic_error("core switches belong to no pod");
    }
    throw std::logic_error("bad node kind");
}

void Topology::build_adjacency() {
    adjacency_.assign(node_count(), {});
    for (int i = 0; i < static_cast<int>(links_.size()); ++i) {
        const Link& l = links_[i];
        adjacency_[flat_index(l.a)].emplace_back(l.b, i);
        adjacency_[flat_index(l.b)].emplace_back(l.a, i);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

Topology Topology::fat_tree(int k, double host_cpu, double link_bandwidth_mbps,
                            double host_memory_gb, double link_delay_ms) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("fat-tree arity must be even and >= 2, got " +
                                    std::to_string(k));
    const int half = k / 2;
    Topology t;
    t.k_ = k;
    t.counts_ = {k * half * half, k * half, k * half, half * half};
    t.host_cpu_ = host_cpu;
    t.host_memory_gb_ = host_memory_gb;

    auto add = [&](NodeId a, NodeId b) {
        t.links_.push_back({a, b, link_bandwidth_mbps, link_delay_ms});
    };
    // host <-> edge
    for (int e = 0; e < t.counts_[1]; ++e)
        for (int j = 0; j < half; ++j) add(host(e * half + j), edge_switch(e));
    // edge <-> agg, full mesh within each pod
    for (int pod = 0; pod < k; ++pod)
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                add(edge_switch(pod * half + i), agg_switch(pod * half + j));
    // agg <-> core: agg at in-pod position j serves core group j
    for (int pod = 0; pod < k; ++pod)
        for (int j = 0; j < half; ++j)
            for (int m = 0; m < half; ++m)
                add(agg_switch(pod * half + j), core_switch(j * half + m));

    t.build_adjacency();
    return t;
}

Topology Topology::custom(std::array<int, kNodeKindCount> counts, std::vector<Link> links,
                          double host_cpu, double host_memory_gb) {
    Topology t;
    t.k_ = 0;
    t.counts_ = counts;
    t.host_cpu_ = host_cpu;
    t.host_memory_gb_ = host_memory_gb;
    for (const Link& l : links) {
        if (l.a == l.b) throw std::invalid_argument("link endpoints must be distinct");
        if (l.bandwidth_mbps <= 0.0) throw std::invalid_argument("link bandwidth must be > 0");
        if (!t.contains(l.a) || !t.contains(l.b))
            throw std::invalid_argument("link references a node outside the topology");
    }
    t.links_ = std::move(links);
    t.build_adjacency();
    return t;
}

Topology generate_fat_tree(int k, double host_cpu, double link_bandwidth_mbps,
                           double host_memory_gb, double link_delay_ms) {
    return Topology::fat_tree(k, host_cpu, link_bandwidth_mbps, host_memory_gb, link_delay_ms);
}

std::vector<std::pair<NodeId, const Link*>> neighbours(const Topology& t, NodeId n) {
    std::vector<std::pair<NodeId, const Link*>> out;
    for (const auto& [nb, link_index] : t.adjacent(n)) out.emplace_back(nb, &t.link(link_index));
    return out;  // adjacency lists are kept sorted by (kind, index)
}

void dump_edge_list(const Topology& t, std::ostream& os) {
    for (const Link& l : t.links())
        os << to_string(l.a) << ' ' << to_string(l.b) << ' ' << l.bandwidth_mbps << ' '
           << l.delay_ms << '\n';
}

}  // namespace genesis
