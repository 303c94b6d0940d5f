#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "genesis/solvers.hpp"

using namespace genesis;

namespace {

using enum VnfKind;

std::vector<VnfKind> kinds_of(const std::vector<OrderedVnf>& ordered) {
    std::vector<VnfKind> out;
    for (const OrderedVnf& v : ordered) out.push_back(v.kind);
    return out;
}

bool is_subsequence(const std::vector<VnfKind>& needle, const std::vector<VnfKind>& hay) {
    std::size_t i = 0;
    for (VnfKind v : hay)
        if (i < needle.size() && needle[i] == v) ++i;
    return i == needle.size();
}

struct Fixture {
    Topology topo;
    EncodingUniverse universe;
    PredictorSet predictors;
    DecodeContext ctx;

    Fixture(int k, int n_sfcrs, std::uint64_t seed = 11)
        : topo(generate_fat_tree(k, 2.0, 10.0, 5.0)),
          universe(EncodingUniverse::from(topo, n_sfcrs)),
          predictors(PredictorSet::create(universe, seed)),
          ctx{&topo, &predictors, universe, 2.0, 0} {}
};

Genome random_genome(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    Genome g;
    for (int i = 0; i < kGenomeLength; ++i) g[i] = uni(rng);
    return g;
}

int bfs_hops(const Topology& t, NodeId src, NodeId dst) {
    std::map<NodeId, int> dist{{src, 0}};
    std::queue<NodeId> q;
    q.push(src);
    while (!q.empty()) {
        const NodeId curr = q.front();
        q.pop();
        if (curr == dst) return dist.at(curr);
        // hosts do not forward
        if (curr.kind == NodeKind::Host && curr != src) continue;
        for (const auto& [nb, link] : t.adjacent(curr)) {
            (void)link;
            if (!dist.count(nb)) {
                dist[nb] = dist.at(curr) + 1;
                q.push(nb);
            }
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("strict order repair follows the remove-and-reinsert trace") {
    // sorted-by-priority order [C, B, A], strict [A, C]:
    // A sits at index 2; C at index 0 moves to index 2 -> [B, A, C]
    std::vector<OrderedVnf> ordered = {{HttpAccelerator, 1, 0.9},
                                       {WebAppFirewall, 1, 0.5},
                                       {LoadBalancer, 1, 0.1}};
    apply_strict_order(ordered, {LoadBalancer, HttpAccelerator});
    CHECK(kinds_of(ordered) ==
          std::vector<VnfKind>{WebAppFirewall, LoadBalancer, HttpAccelerator});
}

TEST_CASE("a full strict order overrides the sort entirely") {
    std::vector<OrderedVnf> ordered = {{HttpAccelerator, 1, 0.9},
                                       {WebAppFirewall, 1, 0.5},
                                       {LoadBalancer, 1, 0.1}};
    const std::vector<VnfKind> strict{LoadBalancer, WebAppFirewall, HttpAccelerator};
    apply_strict_order(ordered, strict);
    CHECK(kinds_of(ordered) == strict);
}

TEST_CASE("repair leaves an already-consistent order alone") {
    std::vector<OrderedVnf> ordered = {{LoadBalancer, 1, 0.9}, {WebAppFirewall, 1, 0.5}};
    apply_strict_order(ordered, {LoadBalancer, WebAppFirewall});
    CHECK(kinds_of(ordered) == std::vector<VnfKind>{LoadBalancer, WebAppFirewall});
}

TEST_CASE("chain composition sorts by descending predictor priority") {
    // Craft HVPP so priorities order WAF > LB > HA: zero everything except
    // each VNF's first hidden weight; the sine chain is monotone there.
    Fixture f(4, 1);
    PredictorSet preds = f.predictors;
    preds.hvpp.fixed_weights.setZero();
    const int base = f.universe.n_sfcrs;
    preds.hvpp.fixed_weights(base + static_cast<int>(LoadBalancer), 0) = 0.5;
    preds.hvpp.fixed_weights(base + static_cast<int>(WebAppFirewall), 0) = 0.9;
    preds.hvpp.fixed_weights(base + static_cast<int>(HttpAccelerator), 0) = 0.1;
    DecodeContext ctx = f.ctx;
    ctx.predictors = &preds;

    Genome g = Genome::Zero();
    g[0] = std::numbers::pi / 2.0;  // hvpp w21

    const SfcRequest sfcr{0, {LoadBalancer, WebAppFirewall, HttpAccelerator}, {}, 0};
    const ForwardingGraph fg = compose_chain(sfcr, g, ctx);
    CHECK(kinds_of(fg.ordered_vnfs) ==
          std::vector<VnfKind>{WebAppFirewall, LoadBalancer, HttpAccelerator});
    // priorities recorded non-increasing
    for (std::size_t i = 1; i < fg.ordered_vnfs.size(); ++i)
        CHECK(fg.ordered_vnfs[i - 1].priority >= fg.ordered_vnfs[i].priority);
}

TEST_CASE("equal priorities keep the request order") {
    Fixture f(4, 1);
    const Genome zeros = Genome::Zero();  // every priority is sin(0) = 0
    const SfcRequest sfcr{0, {WebAppFirewall, LoadBalancer, TrafficMonitor}, {}, 0};
    const ForwardingGraph fg = compose_chain(sfcr, zeros, f.ctx);
    CHECK(kinds_of(fg.ordered_vnfs) ==
          std::vector<VnfKind>{WebAppFirewall, LoadBalancer, TrafficMonitor});
}

TEST_CASE("strict order holds for random genomes across all templates") {
    Fixture f(4, 4);
    std::mt19937_64 rng(2024);
    const auto templates = catalog_sfcrs();
    for (int trial = 0; trial < 1000; ++trial) {
        const Genome g = random_genome(rng);
        for (const SfcRequest& sfcr : templates) {
            const ForwardingGraph fg = compose_chain(sfcr, g, f.ctx);
            const std::vector<VnfKind> got = kinds_of(fg.ordered_vnfs);
            CHECK(is_subsequence(sfcr.strict_order, got));
            // still a permutation of the request
            std::vector<VnfKind> a = got, b = sfcr.vnfs;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
        }
    }
}

TEST_CASE("gaussian sample to host index arithmetic") {
    CHECK(host_from_sample(7.9, 16) == 7);
    CHECK(host_from_sample(-1.2, 16) == 14);  // floor -2, mod, shift
    CHECK(host_from_sample(0.0, 16) == 0);
    CHECK(host_from_sample(16.0, 16) == 0);
    CHECK(host_from_sample(15.999, 16) == 15);
    CHECK(host_from_sample(-16.0, 16) == 0);
    CHECK(host_from_sample(-0.001, 16) == 15);
}

TEST_CASE("non-positive mean host rejects the placement") {
    Fixture f(4, 1);
    PredictorSet preds = f.predictors;
    // one active hidden path driven by the instance input
    preds.hmhp.fixed_weights.setZero();
    const int instance_slot = f.universe.n_sfcrs + f.universe.n_vnf_kinds;
    preds.hmhp.fixed_weights(instance_slot, 0) = std::numbers::pi / 2.0;
    DecodeContext ctx = f.ctx;
    ctx.predictors = &preds;

    const SfcRequest sfcr{0, {LoadBalancer, WebAppFirewall}, {}, 0};
    std::mt19937_64 rng(5);

    Genome g = Genome::Zero();
    g[2] = -std::numbers::pi / 2.0;  // hmhp w21 -> mean = -16
    ForwardingGraph fg = compose_chain(sfcr, g, ctx);
    PartialEmbeddingGraph peg = embed_vnfs(fg, g, ctx, rng);
    for (const Placement& p : peg.placements) CHECK(!p.host.has_value());
    for (double m : peg.mean_hosts) CHECK(m < 0.0);
    CHECK(!peg.all_placed());

    g[2] = 0.0;  // mean exactly 0 is rejected too
    peg = embed_vnfs(compose_chain(sfcr, g, ctx), g, ctx, rng);
    for (const Placement& p : peg.placements) CHECK(!p.host.has_value());

    g[2] = std::numbers::pi / 2.0;  // mean = +16 -> placed
    peg = embed_vnfs(compose_chain(sfcr, g, ctx), g, ctx, rng);
    CHECK(peg.all_placed());
    for (const Placement& p : peg.placements) {
        CHECK(*p.host >= 0);
        CHECK(*p.host < 16);
    }
}

TEST_CASE("two hosts joined by one switch route through it") {
    const Topology topo = Topology::custom(
        {2, 1, 0, 0},
        {{host(0), edge_switch(0), 10.0, 0.1}, {host(1), edge_switch(0), 10.0, 0.1}}, 1.0, 5.0);
    const EncodingUniverse u = EncodingUniverse::from(topo, 1);
    const PredictorSet preds = PredictorSet::create(u, 3);
    const DecodeContext ctx{&topo, &preds, u, 2.0, 0};
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const Genome g = random_genome(rng);
        const std::vector<NodeId> path = find_path(0, host(0), host(1), g, ctx);
        CHECK(path == std::vector<NodeId>{host(0), edge_switch(0), host(1)});
    }
}

TEST_CASE("an unreachable destination raises an error") {
    const Topology topo = Topology::custom(
        {2, 2, 0, 0},
        {{host(0), edge_switch(0), 10.0, 0.1}, {host(1), edge_switch(1), 10.0, 0.1}}, 1.0, 5.0);
    const EncodingUniverse u = EncodingUniverse::from(topo, 1);
    const PredictorSet preds = PredictorSet::create(u, 4);
    const DecodeContext ctx{&topo, &preds, u, 2.0, 0};
    CHECK_THROWS_AS(find_path(0, host(0), host(1), Genome::Zero(), ctx), std::runtime_error);
}

TEST_CASE("same-host segments are a single node with zero links") {
    Fixture f(4, 1);
    const std::vector<NodeId> path = find_path(0, host(3), host(3), Genome::Zero(), f.ctx);
    CHECK(path == std::vector<NodeId>{host(3)});
}

TEST_CASE("constant link cost reduces the search to shortest hops") {
    for (int k : {2, 4}) {
        Fixture f(k, 2);
        Genome g = Genome::Zero();  // hlcp slice zero -> every cost is 1
        for (int a = 0; a < f.topo.host_count(); ++a)
            for (int b = a + 1; b < f.topo.host_count(); ++b) {
                const std::vector<NodeId> path = find_path(0, host(a), host(b), g, f.ctx);
                const int hops = static_cast<int>(path.size()) - 1;
                CHECK(hops == bfs_hops(f.topo, host(a), host(b)));
            }
    }
}

TEST_CASE("paths never route through intermediate hosts") {
    Fixture f(4, 8);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const Genome g = random_genome(rng);
        const std::vector<NodeId> path = find_path(0, host(0), host(9), g, f.ctx);
        REQUIRE(path.size() >= 2);
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            CHECK(path[i].kind != NodeKind::Host);
    }
}

TEST_CASE("rejected placements reject the whole embedding") {
    Fixture f(4, 1);
    PartialEmbeddingGraph peg;
    peg.fg.sfcr_id = 0;
    peg.fg.ordered_vnfs = {{LoadBalancer, 1, 0.0}};
    peg.placements = {{LoadBalancer, 1, std::nullopt}};
    peg.mean_hosts = {-1.0};
    const EmbeddingGraph eg = embed_links(peg, Genome::Zero(), f.ctx);
    CHECK(eg.status == EmbedStatus::Rejected);
    CHECK(eg.paths.empty());
}

TEST_CASE("embedded chains anchor at the ingress switch") {
    Fixture f(4, 1);
    PartialEmbeddingGraph peg;
    peg.fg.sfcr_id = 0;
    peg.fg.ordered_vnfs = {{LoadBalancer, 1, 0.0}, {WebAppFirewall, 1, 0.0}};
    peg.placements = {{LoadBalancer, 1, 5}, {WebAppFirewall, 1, 12}};
    peg.mean_hosts = {5.0, 12.0};
    const EmbeddingGraph eg = embed_links(peg, Genome::Zero(), f.ctx);
    REQUIRE(eg.status == EmbedStatus::Embedded);
    REQUIRE(eg.paths.size() == 3);  // ingress->v1, v1->v2, v2->egress
    const NodeId anchor = f.ctx.anchor_switch();
    CHECK(anchor == edge_switch(0));
    CHECK(eg.paths.front().front() == anchor);
    CHECK(eg.paths.front().back() == host(5));
    CHECK(eg.paths[1].front() == host(5));
    CHECK(eg.paths[1].back() == host(12));
    CHECK(eg.paths.back().back() == anchor);
}

TEST_CASE("a genome of zeros rejects every request") {
    Fixture f(4, 8);
    const auto requests = replicate(catalog_sfcrs(), 2);
    const auto egs = decode(Genome::Zero(), requests, f.ctx, 99);
    REQUIRE(egs.size() == 8);
    for (const EmbeddingGraph& eg : egs) CHECK(eg.status == EmbedStatus::Rejected);
}

TEST_CASE("decode of no requests is empty") {
    Fixture f(4, 1);
    CHECK(decode(Genome::Zero(), {}, f.ctx, 1).empty());
}

TEST_CASE("decode is deterministic for a fixed seed and genome") {
    Fixture f(4, 8);
    const auto requests = replicate(catalog_sfcrs(), 2);
    std::mt19937_64 rng(15);
    const Genome g = random_genome(rng);
    const auto a = decode(g, requests, f.ctx, 123);
    const auto b = decode(g, requests, f.ctx, 123);
    REQUIRE(a.size() == b.size());
    std::ostringstream da, db;
    dump_embeddings(a, da);
    dump_embeddings(b, db);
    CHECK(da.str() == db.str());

    const auto c = decode(g, requests, f.ctx, 124);
    std::ostringstream dc;
    dump_embeddings(c, dc);
    CHECK(da.str() != dc.str());  // the seed matters
}

TEST_CASE("decode seeds depend on run seed and genome bits") {
    std::mt19937_64 rng(8);
    const Genome a = random_genome(rng);
    const Genome b = random_genome(rng);
    CHECK(decode_seed(1, a) == decode_seed(1, a));
    CHECK(decode_seed(1, a) != decode_seed(2, a));
    CHECK(decode_seed(1, a) != decode_seed(1, b));
}

TEST_CASE("decoded embeddings have valid placements and paths") {
    Fixture f(4, 8);
    const auto requests = replicate(catalog_sfcrs(), 2);
    std::mt19937_64 rng(31337);
    const NodeId anchor = f.ctx.anchor_switch();
    for (int trial = 0; trial < 1000; ++trial) {
        const Genome g = random_genome(rng);
        const auto egs = decode(g, requests, f.ctx, 1000 + trial);
        REQUIRE(egs.size() == requests.size());
        for (const EmbeddingGraph& eg : egs) {
            for (std::size_t i = 0; i < eg.peg.placements.size(); ++i) {
                const Placement& p = eg.peg.placements[i];
                CHECK(p.kind == eg.peg.fg.ordered_vnfs[i].kind);
                if (p.host) {
                    CHECK(*p.host >= 0);
                    CHECK(*p.host < f.topo.host_count());
                }
            }
            if (eg.status == EmbedStatus::Rejected) {
                CHECK(eg.paths.empty());
                continue;
            }
            REQUIRE(eg.paths.size() == eg.peg.placements.size() + 1);
            NodeId expect_start = anchor;
            for (std::size_t s = 0; s < eg.paths.size(); ++s) {
                const auto& path = eg.paths[s];
                REQUIRE(!path.empty());
                CHECK(path.front() == expect_start);
                const NodeId expect_end = s + 1 < eg.paths.size()
                                              ? host(*eg.peg.placements[s].host)
                                              : anchor;
                CHECK(path.back() == expect_end);
                expect_start = expect_end;
                std::set<NodeId> seen;
                for (NodeId n : path) CHECK(seen.insert(n).second);  // simple
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    CHECK(f.topo.link_between(path[i], path[i + 1]) >= 0);
            }
        }
    }
}
