#include "genesis/neuro.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace genesis {

bool genome_less(const Genome& a, const Genome& b) {
    for (int i = 0; i < kGenomeLength; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + salt * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PredictorSpec make_predictor(int input_width, std::uint64_t seed, double amplitude) {
    if (input_width <= 0) throw std::invalid_argument("predictor input width must be > 0");
    PredictorSpec spec;
    spec.input_width = input_width;
    spec.seed = seed;
    spec.amplitude = amplitude;
    spec.fixed_weights.resize(input_width, 2);
    std::mt19937_64 rng(seed);
    // Positive half-wave only: with at most three hot inputs the hidden
    // pre-activation stays in (0, pi), so hidden features keep a fixed sign
    // and the evolvable output phase alone decides the output's sign. Signed
    // input weights would scatter hidden signs across feature combinations,
    // leaving no genome that clears the placement guard for every VNF.
    std::uniform_real_distribution<double> uni(0.0, std::numbers::pi / 3.0);
    for (int i = 0; i < input_width; ++i)
        for (int j = 0; j < 2; ++j) spec.fixed_weights(i, j) = uni(rng);
    return spec;
}

double forward(const PredictorSpec& spec, GenomeSlice genes, const Eigen::VectorXd& x,
               Activation act) {
    if (x.size() != spec.input_width)
        throw std::invalid_argument("feature width " + std::to_string(x.size()) +
                                    " does not match predictor input width " +
                                    std::to_string(spec.input_width));
    const Eigen::Vector2d pre = spec.fixed_weights.transpose() * x;
    auto activate = [act](double v) {
        return act == Activation::Sine ? std::sin(v) : std::max(0.0, v);
    };
    const double h1 = activate(pre[0]);
    const double h2 = activate(pre[1]);
    return spec.amplitude * activate(genes.w21 * h1 + genes.w22 * h2);
}

EncodingUniverse EncodingUniverse::from(const Topology& topo, int n_sfcrs) {
    return {n_sfcrs, kVnfKindCount, topo.node_count(), topo.host_count()};
}

namespace {

void put_one_hot(Eigen::VectorXd& x, int offset, int hot, int width, const char* what) {
    if (hot < 0 || hot >= width)
        throw std::invalid_argument(std::string(what) + " index " + std::to_string(hot) +
                                    " outside universe of " + std::to_string(width));
    x[offset + hot] = 1.0;
}

}  // namespace

Eigen::VectorXd encode_hvpp_input(int sfcr_id, VnfKind vnf, const EncodingUniverse& u) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(hvpp_input_width(u));
    put_one_hot(x, 0, sfcr_id, u.n_sfcrs, "sfcr");
    put_one_hot(x, u.n_sfcrs, static_cast<int>(vnf), u.n_vnf_kinds, "vnf");
    return x;
}

Eigen::VectorXd encode_hmhp_input(int fg_id, VnfKind vnf, int instance,
                                  const EncodingUniverse& u) {
    if (instance < 0) throw std::invalid_argument("vnf instance number must be non-negative");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(hmhp_input_width(u));
    put_one_hot(x, 0, fg_id, u.n_sfcrs, "fg");
    put_one_hot(x, u.n_sfcrs, static_cast<int>(vnf), u.n_vnf_kinds, "vnf");
    x[u.n_sfcrs + u.n_vnf_kinds] = static_cast<double>(instance);
    return x;
}

Eigen::VectorXd encode_hlcp_input(int peg_id, NodeId src, NodeId dst, const Topology& topo,
                                  const EncodingUniverse& u) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(hlcp_input_width(u));
    put_one_hot(x, 0, peg_id, u.n_sfcrs, "peg");
    put_one_hot(x, u.n_sfcrs, topo.flat_index(src), u.n_nodes, "src node");
    put_one_hot(x, u.n_sfcrs + u.n_nodes, topo.flat_index(dst), u.n_nodes, "dst node");
    return x;
}

PredictorSet PredictorSet::create(const EncodingUniverse& u, std::uint64_t master_seed) {
    PredictorSet set;
    set.hvpp = make_predictor(hvpp_input_width(u), mix_seed(master_seed, 1), 1.0);
    set.hmhp = make_predictor(hmhp_input_width(u), mix_seed(master_seed, 2),
                              static_cast<double>(u.n_hosts));
    set.hlcp = make_predictor(hlcp_input_width(u), mix_seed(master_seed, 3), 1.0);
    return set;
}

}  // namespace genesis
