#pragma once

#include "schemes.hpp"

namespace swsc {

// The four conditioning patterns per receiver that every erasure-family
// chain term is an affine combination of.
struct IcAtoms {
    double x[2];    // I(X;Yk)
    double x_w[2];  // I(X;Yk|W)
    double w[2];    // I(W;Yk)
    double w_x[2];  // I(W;Yk|X)
    double xw[2];   // I(X,W;Yk)
};

IcAtoms ic_atoms(const IcModel& m);

// Rate pair of a single-block rate-splitting scheme whose senders use
// cascaded erasure splits with unknown-symbol levels a (size s+1, a[0]=1,
// a[s]=0, nonincreasing) and b (size t+1). Orders give each receiver's peel
// sequence as stream ids (0 = sender 1's parts, 1 = sender 2's), parts taken
// in cascade order within a stream. Receiver k must peel all of stream k.
struct RsScheme {
    std::vector<double> a_levels;
    std::vector<double> b_levels;
    std::vector<int> d1;  // stream ids in peel order at receiver 1
    std::vector<int> d2;
};
std::pair<double, double> rs_rate_pair(const IcAtoms& atoms, const RsScheme& scheme);

// Largest R1 over all swept cascade splits (s, t <= max_parts) and peel
// orders while R2 is held at its simultaneous-decoding maximum I(W;Y2|X),
// against the corner of the simultaneous-decoding region.
struct RsGapResult {
    double r2_max = 0.0;
    double snd_corner_r1 = 0.0;
    double best_rs_r1 = 0.0;
    double margin = 0.0;
    int best_s = 0, best_t = 0;
    std::string best_scheme;
};
RsGapResult rs_gap_demo(const IcModel& m, int max_parts, int grid);

// Sup-norm comparison of the swept-union boundary against the
// simultaneous-decoding boundary.
struct EnvelopeGap {
    double max_gap = 0.0;        // SND above union (worst sampled R1)
    double max_overshoot = 0.0;  // union above SND (must stay ~0)
    double r1max_gap = 0.0;
};
EnvelopeGap swsc_union_vs_snd(const IcModel& m, int grid, int samples);
EnvelopeGap compare_regions(const RateRegion2& outer, const RateRegion2& inner,
                            int samples);

// Coverage of the 4-D auxiliary-region vertices by the union of
// erasure-swept per-receiver boxes; ports of ch4 ordered (S, T, U, V).
struct HkCoverage {
    double worst_shortfall = 0.0;
    int vertex_count = 0;
};
HkCoverage hk_coverage(const DiscreteChannel& ch4, int grid);

// Theoretical symmetric-rate curves for the coded-modulation comparison.
struct CurvePoint {
    double inr_db = 0.0;
    double ian_subst = 0.0;     // interference replaced by Gaussian noise
    double ian_marginal = 0.0;  // constellation-aware single-user decoding
    double swcm = 0.0;          // best staggered two-layer scheme
    double snd = 0.0;
};
std::vector<CurvePoint> theory_curve(double snr_db, const std::vector<double>& inr_db,
                                     const std::string& map1, const std::string& map2);

// Best achievable symmetric rate of the staggered two-layer scheme over all
// feasible decoding-order pairs, plus the pair that attains it.
struct SwcmOperatingPoint {
    double symmetric_rate = 0.0;
    SwscOrder d1, d2;
};
SwcmOperatingPoint best_swcm_orders(const IcModel& m);

double ian_substituted_rate(const GaussianChannel& ch, int receiver);

}  // namespace swsc
