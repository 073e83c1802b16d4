#pragma once

#include <vector>

namespace swsc {

// Gauss-Hermite rule for the weight exp(-t^2) on (-inf, inf).
// For E[f(N)] with N ~ N(0, sigma^2): sum_i (w_i / sqrt(pi)) f(sqrt(2) sigma t_i).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights via Golub-Welsch on the Jacobi matrix. Cached per n.
const GaussHermite& gauss_hermite(int n);

constexpr int kDefaultQuadNodes = 96;

}  // namespace swsc
