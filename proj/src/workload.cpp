#include "genesis/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace genesis {

std::string to_string(VnfKind v) {
    switch (v) {
        case VnfKind::LoadBalancer: return "lb";
        case VnfKind::WebAppFirewall: return "waf";
        case VnfKind::HttpAccelerator: return "ha";
        case VnfKind::TrafficMonitor: return "tm";
    }
    throw std::logic_error("bad VnfKind");
}

std::optional<VnfKind> vnf_from_string(const std::string& name) {
    if (name == "lb") return VnfKind::LoadBalancer;
    if (name == "waf") return VnfKind::WebAppFirewall;
    if (name == "ha") return VnfKind::HttpAccelerator;
    if (name == "tm") return VnfKind::TrafficMonitor;
    return std::nullopt;
}

std::vector<SfcRequest> catalog_sfcrs() {
    using enum VnfKind;
    const std::vector<std::vector<VnfKind>> chains = {
        {LoadBalancer, WebAppFirewall},
        {HttpAccelerator, LoadBalancer, WebAppFirewall},
        {HttpAccelerator, TrafficMonitor, LoadBalancer, WebAppFirewall},
        {LoadBalancer, TrafficMonitor, WebAppFirewall},
    };
    std::vector<SfcRequest> out;
    for (int i = 0; i < static_cast<int>(chains.size()); ++i)
        out.push_back({i, chains[i], chains[i], i});
    return out;
}

std::vector<SfcRequest> replicate(const std::vector<SfcRequest>& templates, int copies) {
    if (copies < 1) throw std::invalid_argument("copies must be >= 1");
    std::vector<SfcRequest> out;
    out.reserve(templates.size() * copies);
    int next_id = 0;
    for (int c = 0; c < copies; ++c) {
        for (const SfcRequest& tpl : templates) {
            SfcRequest r = tpl;
            r.id = next_id;
            r.arrival_rank = next_id;
            out.push_back(std::move(r));
            ++next_id;
        }
    }
    return out;
}

std::string to_string(TrafficVariant v) { return v == TrafficVariant::A ? "A" : "B"; }

double TrafficPattern::peak() const { return *std::max_element(rates.begin(), rates.end()); }

TrafficPattern traffic_pattern(TrafficVariant variant, int scale, double base, double amplitude) {
    constexpr int period = 24;
    constexpr int peak_t = 14;  // afternoon peak
    TrafficPattern p;
    p.scale = scale;
    p.phase_shift = variant == TrafficVariant::B ? 0.5 : 0.0;
    p.rates.resize(period);
    const int shift = variant == TrafficVariant::B ? period / 2 : 0;
    for (int t = 0; t < period; ++t) {
        const int tt = (t + shift) % period;
        const double phase = 2.0 * std::numbers::pi * (tt - (peak_t - period / 4)) / period;
        p.rates[t] = scale * (base + amplitude * 0.5 * (1.0 + std::sin(phase)));
    }
    return p;
}

}  // namespace genesis
