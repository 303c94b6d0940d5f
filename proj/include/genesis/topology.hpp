#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace genesis {

enum class NodeKind : std::uint8_t { Host = 0, EdgeSwitch = 1, AggSwitch = 2, CoreSwitch = 3 };

constexpr int kNodeKindCount = 4;

/// Identifies a node as (kind, ordinal within kind). Ordering is kind-major,
/// which is also the dense flat-index order used for one-hot encodings.
struct NodeId {
    NodeKind kind{NodeKind::Host};
    int index{0};

    auto operator<=>(const NodeId&) const = default;
};

std::string to_string(NodeId n);

inline NodeId host(int i) { return {NodeKind::Host, i}; }
inline NodeId edge_switch(int i) { return {NodeKind::EdgeSwitch, i}; }
inline NodeId agg_switch(int i) { return {NodeKind::AggSwitch, i}; }
inline NodeId core_switch(int i) { return {NodeKind::CoreSwitch, i}; }

/// Undirected capacity-carrying link, stored once with endpoints in NodeId order.
struct Link {
    NodeId a;
    NodeId b;
    double bandwidth_mbps{0.0};  // MB/s
    double delay_ms{0.0};        // propagation delay per traversal
};

/// Substrate network. Immutable after construction; hosts are numbered
/// pod-major left-to-right, switches are flat-indexed per layer.
class Topology {
public:
    /// Builds the standard k-ary fat tree: k pods of k/2 edge and k/2 agg
    /// switches, k/2 hosts per edge switch, (k/2)^2 core switches.
    /// Throws std::invalid_argument on odd or non-positive arity.
    static Topology fat_tree(int k, double host_cpu, double link_bandwidth_mbps,
                             double host_memory_gb, double link_delay_ms = 0.1);

    /// Arbitrary-graph constructor for tests and tools. Counts are per
    /// NodeKind; links must reference in-range, distinct endpoints.
    static Topology custom(std::array<int, kNodeKindCount> counts, std::vector<Link> links,
                           double host_cpu, double host_memory_gb);

    int arity() const { return k_; }  // 0 for custom topologies
    int host_count() const { return counts_[0]; }
    int edge_switch_count() const { return counts_[1]; }
    int agg_switch_count() const { return counts_[2]; }
    int core_switch_count() const { return counts_[3]; }
    int node_count() const;
    int count(NodeKind kind) const { return counts_[static_cast<int>(kind)]; }

    double host_cpu() const { return host_cpu_; }
    double host_memory_gb() const { return host_memory_gb_; }

    const std::vector<Link>& links() const { return links_; }
    const Link& link(int link_index) const { return links_[link_index]; }

    bool contains(NodeId n) const;
    /// Dense ordinal over all nodes: hosts first, then edge/agg/core blocks.
    int flat_index(NodeId n) const;
    NodeId node_at(int flat) const;

    /// Index into links() of the link joining a and b, or -1 if none.
    int link_between(NodeId a, NodeId b) const;

    /// Adjacency of n as (neighbour, link index), sorted by neighbour id.
    const std::vector<std::pair<NodeId, int>>& adjacent(NodeId n) const;

    /// The edge switch a host attaches to.
    NodeId edge_switch_of(int host_index) const;

    /// Pod of a host or pod-level switch (hosts are pod-major).
    int pod_of(NodeId n) const;

private:
    Topology() = default;
    void build_adjacency();

    int k_{0};
    std::array<int, kNodeKindCount> counts_{0, 0, 0, 0};
    double host_cpu_{0.0};
    double host_memory_gb_{0.0};
    std::vector<Link> links_;
    std::vector<std::vector<std::pair<NodeId, int>>> adjacency_;  // by flat index
};

/// Standard fat-tree factory (see Topology::fat_tree).
Topology generate_fat_tree(int k, double host_cpu, double link_bandwidth_mbps,
                           double host_memory_gb, double link_delay_ms = 0.1);

/// All nodes sharing a link with n, sorted by (kind, index).
/// Throws std::out_of_range for a node outside the topology.
std::vector<std::pair<NodeId, const Link*>> neighbours(const Topology& t, NodeId n);

/// Emits one "node_a node_b bandwidth delay" line per link.
void dump_edge_list(const Topology& t, std::ostream& os);

}  // namespace genesis
