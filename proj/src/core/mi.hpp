#pragma once

#include <cstdint>

#include "channel.hpp"
#include "split.hpp"

namespace swsc {

// I(A ; Y_receiver | B) over the layer variables of a split. Layers outside
// A and B are marginalized into the channel. Masks index global layers.
struct MiQuery {
    uint32_t target_mask = 0;
    uint32_t cond_mask = 0;
    int receiver = 0;
};

// Exact summation. Bits (log base 2).
double mutual_info(const DiscreteChannel& ch, const LayerSplit& split,
                   const MiQuery& q);

// Gauss-Hermite quadrature, 1-D real or 2-D complex signals.
double mutual_info(const GaussianChannel& ch, const LayerSplit& split,
                   const MiQuery& q);

// Seeded Monte Carlo estimate; works for any signal dimensionality (the
// fallback for stacked-antenna maps the quadrature path rejects).
struct McEstimate {
    double bits = 0.0;
    double std_error = 0.0;
};
McEstimate mc_mutual_info(const GaussianChannel& ch, const LayerSplit& split,
                          const MiQuery& q, long samples, uint64_t seed);

// |sum_i I(Z_i; Y | Z_1..Z_{i-1}) - I(Z_all; Y)| for an ordering of one
// sender's layers, the other sender marginalized throughout.
double chain_rule_residual(const DiscreteChannel& ch, const LayerSplit& split,
                           const std::vector<int>& order, int receiver);
double chain_rule_residual(const GaussianChannel& ch, const LayerSplit& split,
                           const std::vector<int>& order, int receiver);

}  // namespace swsc
