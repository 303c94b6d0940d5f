#include "genesis/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace genesis {

std::string to_string(EvalMode m) { return m == EvalMode::Surrogate ? "surrogate" : "online"; }

namespace {

struct EgFootprint {
    std::vector<std::pair<int, double>> host_cpu_per_rate;  // (host, cpu per req/s)
    std::vector<int> link_traversals;                       // link index per traversal
};

EgFootprint footprint(const EmbeddingGraph& eg, const Topology& topo, const VnfCatalog& catalog) {
    EgFootprint fp;
    for (const Placement& p : eg.peg.placements) {
        if (!p.host) throw std::logic_error("footprint of a rejected placement");
        fp.host_cpu_per_rate.emplace_back(*p.host, catalog.cpu_per_req(p.kind));
    }
    for (const auto& path : eg.paths) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const int link = topo.link_between(path[i], path[i + 1]);
            if (link < 0)
                throw std::logic_error("path step " + to_string(path[i]) + "-" +
                                       to_string(path[i + 1]) + " is not a topology link");
            fp.link_traversals.push_back(link);
        }
    }
    return fp;
}

}  // namespace

ResourceLedger::ResourceLedger(const Topology& topo, int timesteps)
    : topo_(&topo),
      host_cpu_used_(timesteps, std::vector<double>(topo.host_count(), 0.0)),
      link_bw_used_(timesteps, std::vector<double>(topo.links().size(), 0.0)) {}

bool ResourceLedger::fits(const EmbeddingGraph& eg, const TrafficPattern& pattern,
                          const VnfCatalog& catalog, const SimConstants& consts) const {
    const EgFootprint fp = footprint(eg, *topo_, catalog);
    for (int t = 0; t < timesteps(); ++t) {
        const double rate = pattern.rate(t);
        std::vector<double> host_extra(topo_->host_count(), 0.0);
        for (const auto& [h, cpu] : fp.host_cpu_per_rate) host_extra[h] += cpu * rate;
        for (int h = 0; h < topo_->host_count(); ++h)
            if (host_extra[h] > 0.0 &&
                host_cpu_used_[t][h] + host_extra[h] > topo_->host_cpu())
                return false;
        std::vector<double> link_extra(topo_->links().size(), 0.0);
        for (int l : fp.link_traversals) link_extra[l] += consts.flow_mb_per_request * rate;
        for (std::size_t l = 0; l < link_extra.size(); ++l)
            if (link_extra[l] > 0.0 &&
                link_bw_used_[t][l] + link_extra[l] > topo_->link(static_cast<int>(l)).bandwidth_mbps)
                return false;
    }
    return true;
}

void ResourceLedger::add(const EmbeddingGraph& eg, const TrafficPattern& pattern,
                         const VnfCatalog& catalog, const SimConstants& consts) {
    const EgFootprint fp = footprint(eg, *topo_, catalog);
    for (int t = 0; t < timesteps(); ++t) {
        const double rate = pattern.rate(t);
        for (const auto& [h, cpu] : fp.host_cpu_per_rate) host_cpu_used_[t][h] += cpu * rate;
        for (int l : fp.link_traversals) link_bw_used_[t][l] += consts.flow_mb_per_request * rate;
    }
}

bool ResourceLedger::any_violation() const {
    constexpr double eps = 1e-9;
    for (int t = 0; t < timesteps(); ++t) {
        for (int h = 0; h < topo_->host_count(); ++h)
            if (host_cpu_used_[t][h] > topo_->host_cpu() + eps) return true;
        for (std::size_t l = 0; l < link_bw_used_[t].size(); ++l)
            if (link_bw_used_[t][l] > topo_->link(static_cast<int>(l)).bandwidth_mbps + eps)
                return true;
    }
    return false;
}

AcceptOutcome accept(const std::vector<EmbeddingGraph>& egs, const Topology& topo,
                     const TrafficPattern& pattern, const VnfCatalog& catalog,
                     const SimConstants& consts) {
    AcceptOutcome out{{}, 1.0, ResourceLedger(topo, pattern.period())};
    // Admission follows sfcr order; decode emits graphs in that order already.
    std::vector<int> order(egs.size());
    for (std::size_t i = 0; i < egs.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return egs[a].sfcr_id() < egs[b].sfcr_id(); });
    for (int i : order) {
        const EmbeddingGraph& eg = egs[i];
        if (eg.status != EmbedStatus::Embedded) continue;
        if (!out.ledger.fits(eg, pattern, catalog, consts)) continue;
        out.ledger.add(eg, pattern, catalog, consts);
        out.accepted_ids.push_back(i);
    }
    std::sort(out.accepted_ids.begin(), out.accepted_ids.end());
    out.acceptance_ratio = egs.empty()
                               ? 1.0
                               : static_cast<double>(out.accepted_ids.size()) /
                                     static_cast<double>(egs.size());
    return out;
}

namespace {

EvaluationResult evaluate_accepted(const std::vector<EmbeddingGraph>& egs,
                                   const std::vector<int>& accepted_ids, int total_count,
                                   const Topology& topo, const TrafficPattern& pattern,
                                   const VnfCatalog& catalog, const SimConstants& consts,
                                   EvalMode mode) {
    EvaluationResult res;
    res.mode = mode;
    res.accepted_count = static_cast<int>(accepted_ids.size());
    res.total_count = total_count;
    res.acceptance_ratio = total_count == 0
                               ? 1.0
                               : static_cast<double>(res.accepted_count) / total_count;

    std::vector<EgFootprint> fps;
    fps.reserve(accepted_ids.size());
    for (int i : accepted_ids) fps.push_back(footprint(egs[i], topo, catalog));

    if (accepted_ids.empty()) {
        // Nothing served: score as worst-case latency so an all-rejecting
        // genome cannot sit on the Pareto front by a vacuous 0 ms. An empty
        // workload stays at 0.
        res.avg_latency_ms = total_count == 0 ? 0.0 : consts.congestion_penalty_ms;
        return res;
    }

    const int T = pattern.period();
    std::vector<double> weighted_latency(accepted_ids.size(), 0.0);
    double total_rate = 0.0;

    for (int t = 0; t < T && !res.congested; ++t) {
        const double rate = pattern.rate(t);
        total_rate += rate;

        std::vector<double> host_demand(topo.host_count(), 0.0);
        std::vector<double> link_util(topo.links().size(), 0.0);
        for (const EgFootprint& fp : fps) {
            for (const auto& [h, cpu] : fp.host_cpu_per_rate) host_demand[h] += cpu * rate;
            for (int l : fp.link_traversals)
                link_util[l] += consts.flow_mb_per_request * rate / topo.link(l).bandwidth_mbps;
        }

        for (std::size_t s = 0; s < fps.size(); ++s) {
            double latency = 0.0;
            for (const auto& [h, cpu] : fps[s].host_cpu_per_rate) {
                // CPU share: the host splits its CPUs proportionally to
                // demand; one VNF can use at most one full CPU.
                const double demand = cpu * rate;
                const double share =
                    host_demand[h] > 0.0
                        ? std::min(1.0, topo.host_cpu() * demand / host_demand[h])
                        : std::min(1.0, topo.host_cpu());
                latency += consts.base_proc_ms / share;
            }
            for (int l : fps[s].link_traversals) {
                const double u = link_util[l];
                if (mode == EvalMode::Online) {
                    if (u >= 1.0) {
                        res.congested = true;
                        break;
                    }
                    latency += topo.link(l).delay_ms / (1.0 - u);
                } else {
                    latency += topo.link(l).delay_ms * (1.0 + u);
                }
            }
            if (res.congested) break;
            weighted_latency[s] += rate * latency;
        }
    }

    if (res.congested) {
        res.avg_latency_ms = consts.congestion_penalty_ms;
        res.per_sfc_latency_ms.assign(accepted_ids.size(), consts.congestion_penalty_ms);
        return res;
    }

    double sum = 0.0;
    for (double wl : weighted_latency) {
        // The congestion penalty is the model's latency ceiling; links sitting
        // a rounding error below saturation must not score worse than links
        // over it.
        const double lat = std::min(total_rate > 0.0 ? wl / total_rate : 0.0,
                                    consts.congestion_penalty_ms);
        res.per_sfc_latency_ms.push_back(lat);
        sum += lat;
    }
    res.avg_latency_ms = sum / static_cast<double>(res.per_sfc_latency_ms.size());
    return res;
}

}  // namespace

EvaluationResult simulate_latency(const std::vector<EmbeddingGraph>& egs,
                                  const std::vector<int>& accepted_ids, int total_count,
                                  const Topology& topo, const TrafficPattern& pattern,
                                  const VnfCatalog& catalog, const SimConstants& consts) {
    return evaluate_accepted(egs, accepted_ids, total_count, topo, pattern, catalog, consts,
                             EvalMode::Online);
}

EvaluationResult surrogate_latency(const std::vector<EmbeddingGraph>& egs,
                                   const std::vector<int>& accepted_ids, int total_count,
                                   const Topology& topo, const TrafficPattern& pattern,
                                   const VnfCatalog& catalog, const SimConstants& consts) {
    return evaluate_accepted(egs, accepted_ids, total_count, topo, pattern, catalog, consts,
                             EvalMode::Surrogate);
}

EvaluationResult evaluate_embeddings(const std::vector<EmbeddingGraph>& egs, const Topology& topo,
                                     const TrafficPattern& pattern, const VnfCatalog& catalog,
                                     const SimConstants& consts, EvalMode mode) {
    const AcceptOutcome adm = accept(egs, topo, pattern, catalog, consts);
    return evaluate_accepted(egs, adm.accepted_ids, static_cast<int>(egs.size()), topo, pattern,
                             catalog, consts, mode);
}

void write_per_sfc_csv(const EvaluationResult& result, const std::vector<int>& accepted_ids,
                       const std::vector<EmbeddingGraph>& egs, std::ostream& os) {
    os << "sfcr_id,latency_ms,vnfs,path_links\n";
    for (std::size_t s = 0; s < accepted_ids.size(); ++s) {
        const EmbeddingGraph& eg = egs[accepted_ids[s]];
        std::size_t links = 0;
        for (const auto& path : eg.paths) links += path.size() - 1;
        os << eg.sfcr_id() << ',' << result.per_sfc_latency_ms[s] << ','
           << eg.peg.placements.size() << ',' << links << '\n';
    }
}

}  // namespace genesis
