#pragma once

#include <string>
#include <vector>

#include "channel.hpp"

namespace swsc {

// One sender's layered input: independent per-layer pmfs plus the
// deterministic map that superimposes the layers into the transmit symbol.
// Discrete ports map into a finite alphabet and carry the declared target
// marginal; constellation ports map into complex transmit values.
struct PortSplit {
    std::vector<Pmf> layer_pmfs;
    std::vector<int> table;    // flat layer combo -> symbol index
    std::vector<Cplx> values;  // flat layer combo * out_dim (constellation)
    int out_dim = 1;
    Pmf target;

    int layers() const { return static_cast<int>(layer_pmfs.size()); }
    std::vector<int> layer_sizes() const;
    int flat() const;
    bool is_constellation() const { return !values.empty(); }
    // Induced marginal over the target alphabet (discrete ports).
    Pmf pushforward() const;
    void validate() const;
};

struct LayerSplit {
    std::vector<PortSplit> ports;

    int total_layers() const;
    // Global layer index <-> (port, local layer).
    int layer_offset(int port) const;
    int port_of_layer(int global) const;
    int layer_size(int global) const;
    const Pmf& layer_pmf(int global) const;
    uint32_t port_mask(int port) const;  // mask of all layers of one port
    uint32_t all_mask() const;
    void validate() const;
};

// Single layer per port, identity map, base input pmfs.
LayerSplit trivial_split(const DiscreteChannel& ch);
// Layers given by each sender's symbol map with uniform layer pmfs.
LayerSplit trivial_split(const GaussianChannel& ch);

// Two-layer split realizing the erasure channel p(x1 | x): x1 = x with
// probability 1 - alpha and the erasure symbol (last index) otherwise;
// x2 is an independent copy of p_x and fills in when x1 is erased.
PortSplit erasure_port_split(const Pmf& p_x, double alpha);

// Three-layer refinement carrying two erasure levels at once: the group (x1)
// behaves as the coarse erasure split and (x1, x2) as the fine one, with x3
// an independent copy of p_x. The coarse level is max(alpha_prime,
// alpha_dblprime); `alpha_prime_coarser` records which argument that was,
// which decides the decoding-order family the split is meant for.
struct ThreeLayerSplit {
    PortSplit port;
    double alpha_coarse = 0.0;
    double alpha_fine = 0.0;
    bool alpha_prime_coarser = true;
};

ThreeLayerSplit compose_three_layer(const Pmf& p_x, double alpha_prime,
                                    double alpha_dblprime);

// Five-layer split (A1, A2, B1, B2, C) for a three-user MAC: A and B get
// erasure splits with probabilities alpha and beta, C stays unsplit.
LayerSplit mac3_split(const Pmf& p_a, const Pmf& p_b, const Pmf& p_c,
                      double alpha, double beta);

// Rewrites a discrete port split over an alphabet of constellation points
// into the constellation flavor consumable by Gaussian channels.
PortSplit to_constellation(const PortSplit& split, const std::vector<Cplx>& points);

// Port split whose layers are the layers of a symbol map, uniform pmfs.
PortSplit port_from_map(const SymbolMap& map);

std::string split_to_json(const LayerSplit& split);
LayerSplit split_from_json(const std::string& text);

}  // namespace swsc
