#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace genesis {

enum class VnfKind : std::uint8_t {
    LoadBalancer = 0,
    WebAppFirewall = 1,
    HttpAccelerator = 2,
    TrafficMonitor = 3,
};

constexpr int kVnfKindCount = 4;

std::string to_string(VnfKind v);
std::optional<VnfKind> vnf_from_string(const std::string& name);

/// CPU units consumed per request/s of traffic, per VNF kind.
struct VnfCatalog {
    std::array<double, kVnfKindCount> cpu_per_request{0.002, 0.004, 0.003, 0.001};

    double cpu_per_req(VnfKind v) const { return cpu_per_request[static_cast<int>(v)]; }
    /// CPU demand of one VNF instance at the given traffic rate.
    double demand(VnfKind v, double rate_req_s) const { return cpu_per_req(v) * rate_req_s; }
};

struct SfcRequest {
    int id{0};
    std::vector<VnfKind> vnfs;
    std::vector<VnfKind> strict_order;  // subsequence constraint over vnfs
    int arrival_rank{0};
};

/// The four data-centre chain templates. Each template's full listed order is
/// its strict order, so the chain generator's repair path runs on every request.
std::vector<SfcRequest> catalog_sfcrs();

/// copies of each template with fresh ids, arrival ranks interleaved
/// round-robin over the templates.
std::vector<SfcRequest> replicate(const std::vector<SfcRequest>& templates, int copies);

enum class TrafficVariant { A, B };

std::string to_string(TrafficVariant v);

/// Periodic request-rate curve sampled once per timestep.
struct TrafficPattern {
    std::vector<double> rates;  // req/s per timestep
    int scale{1};
    double phase_shift{0.0};  // fraction of the period

    int period() const { return static_cast<int>(rates.size()); }
    double rate(int t) const { return rates[((t % period()) + period()) % period()]; }
    double peak() const;
};

/// Synthetic diurnal curve over 24 timesteps: trough `base` req/s at t=2,
/// peak `base + amplitude` req/s at t=14. Variant B is A shifted by half a
/// period; `scale` multiplies every sample.
TrafficPattern traffic_pattern(TrafficVariant variant, int scale, double base = 20.0,
                               double amplitude = 80.0);

}  // namespace genesis
