#pragma once

#include <iosfwd>
#include <vector>

#include "genesis/solvers.hpp"
#include "genesis/topology.hpp"
#include "genesis/workload.hpp"

namespace genesis {

struct SimConstants {
    double base_proc_ms{1.0};          // per-request VNF processing at one full CPU
    double flow_mb_per_request{0.01};  // bandwidth per request/s of traffic
    double congestion_penalty_ms{10000.0};
};

enum class EvalMode { Surrogate, Online };

std::string to_string(EvalMode m);

struct EvaluationResult {
    double acceptance_ratio{0.0};
    double avg_latency_ms{0.0};
    std::vector<double> per_sfc_latency_ms;  // aligned with the accepted set
    EvalMode mode{EvalMode::Surrogate};
    bool congested{false};
    int accepted_count{0};
    int total_count{0};

    bool meets(double min_acceptance_ratio, double max_avg_latency_ms) const {
        return acceptance_ratio >= min_acceptance_ratio && avg_latency_ms <= max_avg_latency_ms;
    }
};

/// Per-timestep host CPU and link bandwidth bookkeeping. Usage accumulates;
/// violations are queried, never clipped.
class ResourceLedger {
public:
    ResourceLedger(const Topology& topo, int timesteps);

    /// True if adding eg keeps every host and link within capacity at every
    /// timestep.
    bool fits(const EmbeddingGraph& eg, const TrafficPattern& pattern, const VnfCatalog& catalog,
              const SimConstants& consts) const;
    void add(const EmbeddingGraph& eg, const TrafficPattern& pattern, const VnfCatalog& catalog,
             const SimConstants& consts);

    double host_cpu_used(int t, int host_index) const { return host_cpu_used_[t][host_index]; }
    double link_bw_used(int t, int link_index) const { return link_bw_used_[t][link_index]; }
    int timesteps() const { return static_cast<int>(host_cpu_used_.size()); }
    bool any_violation() const;

private:
    const Topology* topo_;
    std::vector<std::vector<double>> host_cpu_used_;  // [t][host]
    std::vector<std::vector<double>> link_bw_used_;   // [t][link]
};

struct AcceptOutcome {
    std::vector<int> accepted_ids;  // indices into the input graph list
    double acceptance_ratio{1.0};
    ResourceLedger ledger;
};

/// Capacity admission in sfcr order: an embedded graph is accepted iff adding
/// its CPU and bandwidth demands keeps every resource within capacity at
/// every traffic timestep.
AcceptOutcome accept(const std::vector<EmbeddingGraph>& egs, const Topology& topo,
                     const TrafficPattern& pattern, const VnfCatalog& catalog,
                     const SimConstants& consts);

/// Full flow-level model: VNF delay base_proc/share with CPU shared
/// proportionally to demand among co-located VNFs (capped at one CPU), link
/// delay prop/(1-U). Any used link at U >= 1 marks the result congested and
/// pins the average to the penalty value. Latencies are traffic-weighted time
/// averages, then averaged over accepted chains.
EvaluationResult simulate_latency(const std::vector<EmbeddingGraph>& egs,
                                  const std::vector<int>& accepted_ids, int total_count,
                                  const Topology& topo, const TrafficPattern& pattern,
                                  const VnfCatalog& catalog, const SimConstants& consts);

/// Cheaper underestimate: identical except the link delay linearises to
/// prop*(1+U), which never blows up.
EvaluationResult surrogate_latency(const std::vector<EmbeddingGraph>& egs,
                                   const std::vector<int>& accepted_ids, int total_count,
                                   const Topology& topo, const TrafficPattern& pattern,
                                   const VnfCatalog& catalog, const SimConstants& consts);

/// accept + simulate/surrogate in one step.
EvaluationResult evaluate_embeddings(const std::vector<EmbeddingGraph>& egs, const Topology& topo,
                                     const TrafficPattern& pattern, const VnfCatalog& catalog,
                                     const SimConstants& consts, EvalMode mode);

/// Per-SFC latency breakdown, one row per accepted chain.
void write_per_sfc_csv(const EvaluationResult& result, const std::vector<int>& accepted_ids,
                       const std::vector<EmbeddingGraph>& egs, std::ostream& os);

}  // namespace genesis
