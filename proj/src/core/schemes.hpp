#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mi.hpp"
#include "region.hpp"

namespace swsc {

// Either flavor of two-user interference channel behind one mutual-info call.
struct IcModel {
    bool gaussian = false;
    DiscreteChannel d;
    GaussianChannel g;

    double mi(const LayerSplit& s, const MiQuery& q) const {
        return gaussian ? mutual_info(g, s, q) : mutual_info(d, s, q);
    }
    LayerSplit trivial() const {
        return gaussian ? trivial_split(g) : trivial_split(d);
    }
    static IcModel from(const ChannelConfig& cfg) {
        IcModel m;
        m.gaussian = cfg.is_gaussian;
        m.d = cfg.discrete;
        m.g = cfg.gaussian;
        return m;
    }
};

// Erasure-family splits on one sender of the model, the other sender left at
// its base input. For Gaussian senders the symbol alphabet is the sender's
// map output under uniform layer inputs.
LayerSplit erasure_ic_split(const IcModel& m, int port, double alpha);
struct ComposedIcSplit {
    LayerSplit split;
    bool alpha_prime_coarser = true;
    double alpha_coarse = 0.0, alpha_fine = 0.0;
};
ComposedIcSplit composed_ic_split(const IcModel& m, int port, double alpha_prime,
                                  double alpha_dblprime);

// ---------------------------------------------------------------------------
// Sliding-window decoding orders. A step (stream, lag) means: at the end of
// block j, recover that stream's message with index j + lag (lag <= 0).
// One step per decoded stream; a receiver that never decodes the other
// stream's message treats those layers as noise throughout.
struct SwscStep {
    int stream = 0;
    int lag = 0;
};

struct SwscOrder {
    std::vector<SwscStep> steps;

    bool decodes(int stream) const {
        for (const auto& s : steps)
            if (s.stream == stream) return true;
        return false;
    }
    int lag_of(int stream) const {
        for (const auto& s : steps)
            if (s.stream == stream) return s.lag;
        throw InfeasibleOrderError("stream not decoded by this order");
    }
    std::string to_string() const;
};

// "m1@-2>m2@0" -> steps {(0,-2),(1,0)}.
SwscOrder parse_swsc_order(const std::string& text);
// "d1=m1@-2>m2@0;d2=m1@-2>m2@-1" -> the two receiver orders.
std::pair<SwscOrder, SwscOrder> parse_order_pair(const std::string& text);

// Sequence in which one generic block's layers become known to a receiver
// that follows `order` on a K-L split; global layer indices (sender 1 first).
// Throws InfeasibleOrderError when a lag is too small for the split.
std::vector<int> swsc_layer_order(const SwscOrder& order, int k_layers, int l_layers);

// All feasible order pairs for a K-L split: the K+L alternating two-stream
// orders crossed appropriately, plus the single-stream variants.
std::vector<SwscOrder> feasible_orders(int k_layers, int l_layers, int receiver);

// The five order pairs that drive the three-layer scheme: both directions of
// the staggered conditioning, the plain single-user pair, and the two mixed
// pairs.
std::vector<std::pair<SwscOrder, SwscOrder>> three_one_order_family();

// ---------------------------------------------------------------------------
// Single-block rate-splitting decoding order: the sequence of message parts
// (stream, part index) a receiver peels off.
struct RsOrder {
    std::vector<std::pair<int, int>> parts;
};

// ---------------------------------------------------------------------------
// Rate regions. Labels on cells name the producing scheme.

RateRegion2 region_ian(const IcModel& m, const LayerSplit& split_trivial);
RateRegion2 region_ian(const IcModel& m);
// Half of the treating-as-noise region contributed by one receiver.
RateRegion2 region_ian_receiver_piece(const IcModel& m, int receiver);
RateRegion2 region_scd(const IcModel& m);
RateRegion2 region_sd(const IcModel& m, int receiver);
RateRegion2 region_snd(const IcModel& m);
// The union-of-intersections route (IAN/SD mix per receiver); identical set.
RateRegion2 region_snd_decomposed(const IcModel& m);
// Successive cancellation in a fixed direction at one receiver:
// own_first = decode own message treating the other as noise, then the other.
RateRegion2 region_scd_corner(const IcModel& m, int receiver, bool own_first);

RateRegion2 region_rate_splitting(const IcModel& m, const LayerSplit& split,
                                  const RsOrder& d1, const RsOrder& d2);
RateRegion2 region_swsc(const IcModel& m, const LayerSplit& split,
                        const SwscOrder& d1, const SwscOrder& d2);

enum class OrderFamily {
    CornerPair,   // the two staggered-conditioning order pairs
    FullFamily,   // all five pairs
};
RateRegion2 region_swsc_union(const IcModel& m, OrderFamily family, int grid);

// Unsplit informations driving the erasure-family closed forms.
struct SwscBaseMi {
    double x[2], x_w[2], w[2], w_x[2];
};
SwscBaseMi swsc_base_mi(const IcModel& m);
// Rectangle cells of the five order pairs at one (coarse, fine) split point,
// evaluated through the layer-splitting identity.
std::vector<Cell> swsc_family_cells_from_base(const SwscBaseMi& b, double ac,
                                              double af, size_t n_pairs);

// ---------------------------------------------------------------------------
// Three-user MAC machinery.

struct Mac3Region {
    struct C {
        uint8_t mask = 0;  // bits select r1, r2, r3
        double rhs = 0.0;
    };
    std::vector<C> constraints;  // the seven standard constraints
    // Corner rate triples in label order ABC, BAC, BCA, CBA, CAB, ACB.
    std::array<std::array<double, 3>, 6> corners{};

    bool contains(const std::array<double, 3>& r, double slack) const;
};

// `ports_abc` names which channel ports play roles A, B, C at `receiver`.
Mac3Region region_mac3(const DiscreteChannel& ch, const std::array<int, 3>& ports_abc,
                       int receiver);

// Corner-combination rates for the alpha/beta erasure splits under layer
// order lambda in {1,2,3}.
std::array<double, 3> mac3_rate_from_corners(const Mac3Region& mac, double alpha,
                                             double beta, int lambda);

// Direct route: build the five-layer split and accumulate the layer-order
// mutual informations (three-port channels only).
std::array<double, 3> mac3_rate_direct(const DiscreteChannel& mac, double alpha,
                                       double beta, int lambda);

// ---------------------------------------------------------------------------
// Common/private-message scheme over the four-sender view p(y1,y2|s,t,u,v).
// Ports must be ordered (S, T, U, V). The split carries S in three layers
// and T, V in two layers each; U stays unsplit.
// lambda1 in 1..6 (receiver 1), lambda2 in 7..12 (receiver 2).
RateRegion4 region_hk(const DiscreteChannel& ch4, const LayerSplit& split,
                      int lambda1, int lambda2);

// Four-sender view of a discrete interference channel through symbol maps
// x(s,t) and w(u,v) given as row-major tables.
DiscreteChannel hk_channel_view(const DiscreteChannel& ic, int s_size, int t_size,
                                int u_size, int v_size,
                                const std::vector<int>& x_map,
                                const std::vector<int>& w_map,
                                const Pmf& ps, const Pmf& pt, const Pmf& pu,
                                const Pmf& pv);

}  // namespace swsc
