#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "genesis/topology.hpp"
#include "genesis/workload.hpp"

namespace genesis {

/// The evolvable encoding: six output-layer weights, two per predictor, laid
/// out as [hvpp_w21, hvpp_w22, hmhp_w21, hmhp_w22, hlcp_w21, hlcp_w22].
/// Its size is fixed regardless of request count or topology size.
using Genome = Eigen::Matrix<double, 6, 1>;

constexpr int kGenomeLength = 6;

struct GenomeSlice {
    double w21{0.0};
    double w22{0.0};
};

inline GenomeSlice hvpp_slice(const Genome& g) { return {g[0], g[1]}; }
inline GenomeSlice hmhp_slice(const Genome& g) { return {g[2], g[3]}; }
inline GenomeSlice hlcp_slice(const Genome& g) { return {g[4], g[5]}; }

/// Lexicographic order over genes; deterministic tie-break for selection.
bool genome_less(const Genome& a, const Genome& b);

enum class Activation { Sine, Relu };

/// A two-hidden-neuron feed-forward net. The input layer weights are drawn
/// once from Uniform(0, pi/3) -- the sine's positive half-wave for up to
/// three hot inputs -- and stay fixed for the whole evolution; only the two
/// output weights (the genome slice) evolve.
struct PredictorSpec {
    int input_width{0};
    Eigen::MatrixXd fixed_weights;  // input_width x 2
    std::uint64_t seed{0};
    double amplitude{1.0};
};

PredictorSpec make_predictor(int input_width, std::uint64_t seed, double amplitude);

/// output = amplitude * act(w21*h1 + w22*h2), h_j = act(sum_i W[i][j] * x[i]).
/// Pure; throws std::invalid_argument on an input width mismatch.
double forward(const PredictorSpec& spec, GenomeSlice genes, const Eigen::VectorXd& x,
               Activation act = Activation::Sine);

/// Sizes of the one-hot segments the predictors consume.
struct EncodingUniverse {
    int n_sfcrs{0};
    int n_vnf_kinds{kVnfKindCount};
    int n_nodes{0};
    int n_hosts{0};

    static EncodingUniverse from(const Topology& topo, int n_sfcrs);
};

// Feature layouts (segment order is fixed):
//   HVPP: [one-hot sfcr | one-hot vnf]
//   HMHP: [one-hot fg   | one-hot vnf | instance scalar]
//   HLCP: [one-hot peg  | one-hot src node | one-hot dst node]
Eigen::VectorXd encode_hvpp_input(int sfcr_id, VnfKind vnf, const EncodingUniverse& u);
Eigen::VectorXd encode_hmhp_input(int fg_id, VnfKind vnf, int instance,
                                  const EncodingUniverse& u);
Eigen::VectorXd encode_hlcp_input(int peg_id, NodeId src, NodeId dst, const Topology& topo,
                                  const EncodingUniverse& u);

inline int hvpp_input_width(const EncodingUniverse& u) { return u.n_sfcrs + u.n_vnf_kinds; }
inline int hmhp_input_width(const EncodingUniverse& u) { return u.n_sfcrs + u.n_vnf_kinds + 1; }
inline int hlcp_input_width(const EncodingUniverse& u) { return u.n_sfcrs + 2 * u.n_nodes; }

/// The three predictors of one run. HMHP's output amplitude is the host
/// count; HVPP and HLCP emit values in [-1, 1].
struct PredictorSet {
    PredictorSpec hvpp;
    PredictorSpec hmhp;
    PredictorSpec hlcp;

    static PredictorSet create(const EncodingUniverse& u, std::uint64_t master_seed);
    /// Number of evolvable weights across the set (the genome length).
    int evolvable_weight_count() const { return 2 * 3; }
};

/// splitmix64 step; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace genesis
