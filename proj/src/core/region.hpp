#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "util.hpp"

namespace swsc {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// One conjunction of half-planes with {0,1} coefficients:
//   R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max   (plus R1, R2 >= 0).
// Every rate region in this library is a finite union of such cells.
struct Cell {
    double r1_max = kUnbounded;
    double r2_max = kUnbounded;
    double sum_max = kUnbounded;
    std::string label;

    bool contains(double r1, double r2, double slack) const {
        return r1 <= r1_max + slack && r2 <= r2_max + slack &&
               r1 + r2 <= sum_max + slack;
    }
    bool bounded() const;
    // Largest R2 in the cell at abscissa r1; negative if r1 is outside.
    double top_at(double r1) const;
};

Cell intersect(const Cell& a, const Cell& b);

struct BoundaryPoint {
    double r1 = 0.0;
    double r2 = 0.0;
    std::string label;
};

struct RateRegion2 {
    std::vector<Cell> cells;

    bool contains(double r1, double r2, double slack) const;
    bool empty() const { return cells.empty(); }
    double max_r1() const;
    double max_r2() const;
    // Upper envelope R2*(r1); negative when r1 is beyond the region.
    double top_at(double r1) const;
    double max_r1_at(double r2) const;
    // Largest r with (r, r) in the region.
    double max_symmetric() const;
    // Exact breakpoints of the upper envelope plus `resolution` uniform
    // samples; nonincreasing R2, closed down to the R1 axis.
    std::vector<BoundaryPoint> boundary(int resolution) const;
    // Drops cells contained in another cell.
    void prune();
};

RateRegion2 region_union(const RateRegion2& a, const RateRegion2& b);
RateRegion2 region_intersection(const RateRegion2& a, const RateRegion2& b);

// Finite-block bookkeeping: with b blocks a K-layer stream completes only
// b-K+1 messages, so nominal rates shrink by (b-K+1)/b per stream. Exact for
// regions made of rectangles (the staggered schemes); cells carrying sum
// constraints are rejected since the scaled edge is no longer a staircase.
RateRegion2 apply_edge_loss(const RateRegion2& region, int blocks, int k_layers,
                            int l_layers);

// a subset-of b on a sample grid plus both boundaries' breakpoints.
bool region_contained_in(const RateRegion2& a, const RateRegion2& b, int grid,
                         double slack);

std::string region_boundary_csv(const RateRegion2& region, int resolution);
std::string region_constraints_json(const RateRegion2& region);

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination for the small rate-constraint systems produced
// by rate-splitting and common/private-message schemes.

// sum over set bits of mask1 (rates of stream-1 parts) plus set bits of
// mask2 (stream-2 parts) <= rhs.
struct PartConstraint {
    uint32_t mask1 = 0;
    uint32_t mask2 = 0;
    double rhs = 0.0;
};

struct FmInfeasible : SwscError {
    using SwscError::SwscError;
};

// Projects onto (R1, R2) = (sum of stream-1 parts, sum of stream-2 parts).
// All part rates are nonnegative. Throws FmInfeasible on an empty system and
// SwscError if the projection leaves the {0,1}-coefficient staircase family
// (which no system in this library does).
Cell fm_project(int s_parts, int t_parts, const std::vector<PartConstraint>& cons);

// ---------------------------------------------------------------------------
// Four-dimensional auxiliary regions over (R10, R11, R20, R22).

struct Constraint4 {
    uint8_t mask = 0;  // bit i selects coordinate i
    double rhs = 0.0;
};

struct RateRegion4 {
    std::vector<Constraint4> constraints;

    bool contains(const std::array<double, 4>& r, double slack) const;
};

// Vertices of the polytope {r >= 0, constraints}; deduplicated.
std::vector<std::array<double, 4>> region4_vertices(const RateRegion4& region);

// Projection (R10 + R11, R20 + R22).
RateRegion2 project_to_2(const RateRegion4& region);

}  // namespace swsc
