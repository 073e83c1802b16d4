#include <cmath>

#include "doctest.h"
#include "mi.hpp"
#include "schemes.hpp"
#include "split.hpp"

using namespace swsc;

namespace {

double max_abs(double a, double b) { return std::fabs(a - b); }

}  // namespace

TEST_CASE("erasure split endpoints reproduce the unsplit quantities") {
    Rng rng(41);
    DiscreteChannel ch = random_discrete_ic(rng, 4);
    IcModel m;
    m.d = ch;
    LayerSplit ts = trivial_split(ch);
    uint32_t mw = ts.port_mask(1), mx = ts.port_mask(0);
    double iw = mutual_info(ch, ts, {mw, 0, 0});
    double iwx = mutual_info(ch, ts, {mw, mx, 0});

    LayerSplit e0 = erasure_ic_split(m, 0, 0.0);
    CHECK(max_abs(mutual_info(ch, e0, {e0.port_mask(1), 1u << 0, 0}), iwx) < 1e-12);
    LayerSplit e1 = erasure_ic_split(m, 0, 1.0);
    CHECK(max_abs(mutual_info(ch, e1, {e1.port_mask(1), 1u << 0, 0}), iw) < 1e-12);
    LayerSplit eh = erasure_ic_split(m, 0, 0.5);
    CHECK(max_abs(mutual_info(ch, eh, {eh.port_mask(1), 1u << 0, 0}),
                  0.5 * iw + 0.5 * iwx) < 1e-12);

    CHECK_THROWS_AS(erasure_port_split(ch.input_pmfs[0], 1.5), ConfigError);
}

TEST_CASE("layer-splitting identity over the full alpha grid") {
    auto corpus = std::vector<uint64_t>{1, 2, 3};
    for (uint64_t seed : corpus) {
        Rng rng(seed);
        DiscreteChannel ch = random_discrete_ic(rng, 4);
        IcModel m;
        m.d = ch;
        LayerSplit ts = trivial_split(ch);
        double iw = mutual_info(ch, ts, {ts.port_mask(1), 0, 0});
        double iwx = mutual_info(ch, ts, {ts.port_mask(1), ts.port_mask(0), 0});
        for (int i = 0; i <= 20; ++i) {
            double a = i / 20.0;
            LayerSplit es = erasure_ic_split(m, 0, a);
            double lhs = mutual_info(ch, es, {es.port_mask(1), 1u << 0, 0});
            CHECK(max_abs(lhs, a * iw + (1 - a) * iwx) < 1e-12);
        }
    }
}

TEST_CASE("sum-rate preservation under the two-layer erasure split") {
    Rng rng(47);
    DiscreteChannel ch = random_discrete_ic(rng, 4);
    IcModel m;
    m.d = ch;
    LayerSplit ts = trivial_split(ch);
    double total = mutual_info(ch, ts, {ts.port_mask(0) | ts.port_mask(1), 0, 0});
    for (double a : {0.0, 0.3, 0.8}) {
        LayerSplit es = erasure_ic_split(m, 0, a);
        uint32_t x1 = 1u << 0, x2 = 1u << 1, w = es.port_mask(1);
        double sum = mutual_info(ch, es, {x1, 0, 0}) +
                     mutual_info(ch, es, {x2, x1 | w, 0}) +
                     mutual_info(ch, es, {w, x1, 0});
        CHECK(max_abs(sum, total) < 1e-12);
    }
}

TEST_CASE("pushforward reproduces the declared marginal") {
    Pmf p = {0.2, 0.5, 0.3};
    for (double a : {0.0, 0.31, 1.0}) {
        PortSplit s = erasure_port_split(p, a);
        Pmf f = s.pushforward();
        for (size_t i = 0; i < p.size(); ++i) CHECK(max_abs(f[i], p[i]) < 1e-12);
        s.validate();
    }
    ThreeLayerSplit t = compose_three_layer(p, 0.7, 0.3);
    Pmf f = t.port.pushforward();
    for (size_t i = 0; i < p.size(); ++i) CHECK(max_abs(f[i], p[i]) < 1e-12);
}

TEST_CASE("three-layer refinement carries both erasure levels") {
    Rng rng(53);
    DiscreteChannel ch = random_discrete_ic(rng, 3);
    IcModel m;
    m.d = ch;
    LayerSplit ts = trivial_split(ch);
    double iw = mutual_info(ch, ts, {ts.port_mask(1), 0, 0});
    double iwx = mutual_info(ch, ts, {ts.port_mask(1), ts.port_mask(0), 0});

    SUBCASE("equal levels: the refinement layer adds nothing") {
        ComposedIcSplit cs = composed_ic_split(m, 0, 0.4, 0.4);
        uint32_t w = cs.split.port_mask(1);
        double one = mutual_info(ch, cs.split, {w, 1u << 0, 0});
        double two = mutual_info(ch, cs.split, {w, (1u << 0) | (1u << 1), 0});
        CHECK(max_abs(one, two) < 1e-12);
    }
    SUBCASE("extreme levels") {
        ComposedIcSplit cs = composed_ic_split(m, 0, 1.0, 0.0);
        uint32_t w = cs.split.port_mask(1);
        CHECK(max_abs(mutual_info(ch, cs.split, {w, 1u << 0, 0}), iw) < 1e-12);
        CHECK(max_abs(mutual_info(ch, cs.split, {w, (1u << 0) | (1u << 1), 0}), iwx) <
              1e-12);
    }
    SUBCASE("groups behave as the coarse and fine erasure splits") {
        double ap = 0.7, add = 0.3;
        ComposedIcSplit cs = composed_ic_split(m, 0, ap, add);
        CHECK(cs.alpha_prime_coarser);
        uint32_t w = cs.split.port_mask(1);
        double coarse = mutual_info(ch, cs.split, {w, 1u << 0, 0});
        double fine = mutual_info(ch, cs.split, {w, (1u << 0) | (1u << 1), 0});
        CHECK(max_abs(coarse, ap * iw + (1 - ap) * iwx) < 1e-12);
        CHECK(max_abs(fine, add * iw + (1 - add) * iwx) < 1e-12);
    }
}

TEST_CASE("three-layer split reproduces the merged two-receiver region") {
    // Both receivers' conditioned rates from the single merged split must
    // equal the separate coarse/fine erasure-split evaluations.
    Rng rng(59);
    DiscreteChannel ch = random_discrete_ic(rng, 3);
    IcModel m;
    m.d = ch;
    double ap = 0.7, add = 0.3;
    ComposedIcSplit cs = composed_ic_split(m, 0, ap, add);
    LayerSplit ep = erasure_ic_split(m, 0, ap);
    LayerSplit ed = erasure_ic_split(m, 0, add);

    // Receiver 1 conditions on the coarse group, receiver 2 on the fine one.
    uint32_t w = cs.split.port_mask(1);
    uint32_t g1 = 1u << 0;
    uint32_t g2 = (1u << 0) | (1u << 1);
    uint32_t rest1 = cs.split.port_mask(0) & ~g1;
    uint32_t rest2 = cs.split.port_mask(0) & ~g2;

    double r1_merged = mutual_info(ch, cs.split, {g1, 0, 0}) +
                       mutual_info(ch, cs.split, {rest1, g1 | w, 0});
    double r1_sep = mutual_info(ch, ep, {1u << 0, 0, 0}) +
                    mutual_info(ch, ep, {1u << 1, (1u << 0) | ep.port_mask(1), 0});
    CHECK(max_abs(r1_merged, r1_sep) < 1e-12);

    double r2_merged = mutual_info(ch, cs.split, {g2, 0, 1}) +
                       mutual_info(ch, cs.split, {rest2, g2 | w, 1});
    double r2_sep = mutual_info(ch, ed, {1u << 0, 0, 1}) +
                    mutual_info(ch, ed, {1u << 1, (1u << 0) | ed.port_mask(1), 1});
    CHECK(max_abs(r2_merged, r2_sep) < 1e-12);

    double w1_merged = mutual_info(ch, cs.split, {w, g1, 0});
    double w1_sep = mutual_info(ch, ep, {ep.port_mask(1), 1u << 0, 0});
    CHECK(max_abs(w1_merged, w1_sep) < 1e-12);

    double w2_merged = mutual_info(ch, cs.split, {w, g2, 1});
    double w2_sep = mutual_info(ch, ed, {ed.port_mask(1), 1u << 0, 1});
    CHECK(max_abs(w2_merged, w2_sep) < 1e-12);
}

TEST_CASE("five-layer MAC split corner behavior") {
    Rng rng(61);
    DiscreteChannel mac = random_mac3(rng, 2, 2, 2, 4);
    Mac3Region reg = region_mac3(mac, {0, 1, 2}, 0);

    SUBCASE("alpha = beta = 0 gives the first corner") {
        auto r = mac3_rate_direct(mac, 0.0, 0.0, 1);
        for (int k = 0; k < 3; ++k) CHECK(max_abs(r[k], reg.corners[0][k]) < 1e-12);
    }
    SUBCASE("alpha = 1, beta = 0 gives the swapped corner") {
        auto r = mac3_rate_direct(mac, 1.0, 0.0, 1);
        for (int k = 0; k < 3; ++k) CHECK(max_abs(r[k], reg.corners[1][k]) < 1e-12);
    }
    SUBCASE("interior point matches the convex combination, all orders") {
        for (int lam = 1; lam <= 3; ++lam) {
            auto direct = mac3_rate_direct(mac, 0.5, 0.5, lam);
            auto comb = mac3_rate_from_corners(reg, 0.5, 0.5, lam);
            for (int k = 0; k < 3; ++k) CHECK(max_abs(direct[k], comb[k]) < 1e-12);
        }
    }
}

TEST_CASE("orthogonal MAC corners collapse to the entropy triple") {
    // Y = (A, B, C) noiselessly: |Y| = 8, y = 4a + 2b + c.
    DiscreteChannel mac;
    mac.law.input_sizes = {2, 2, 2};
    mac.law.output_sizes = {8};
    mac.law.law.assign(64, 0.0);
    for (int in = 0; in < 8; ++in) mac.law.law[in * 8 + in] = 1.0;
    mac.input_pmfs = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
    mac.validate();
    Mac3Region reg = region_mac3(mac, {0, 1, 2}, 0);
    for (const auto& c : reg.corners)
        for (int k = 0; k < 3; ++k) CHECK(c[k] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random MAC corners satisfy all constraints with a tight sum") {
    Rng rng(67);
    DiscreteChannel mac = random_mac3(rng, 3, 2, 2, 5);
    Mac3Region reg = region_mac3(mac, {0, 1, 2}, 0);
    double sum_rhs = 0.0;
    for (const auto& c : reg.constraints)
        if (c.mask == 7) sum_rhs = c.rhs;
    for (const auto& corner : reg.corners) {
        CHECK(reg.contains(corner, 1e-9));
        CHECK(corner[0] + corner[1] + corner[2] ==
              doctest::Approx(sum_rhs).epsilon(1e-12));
    }
}

TEST_CASE("split JSON round trip preserves behavior") {
    Rng rng(71);
    DiscreteChannel ch = random_discrete_ic(rng, 3);
    IcModel m;
    m.d = ch;
    LayerSplit split = erasure_ic_split(m, 0, 0.45);
    LayerSplit again = split_from_json(split_to_json(split));
    for (int r = 0; r < 2; ++r) {
        double a = mutual_info(ch, split, {split.port_mask(1), 1u << 0, r});
        double b = mutual_info(ch, again, {again.port_mask(1), 1u << 0, r});
        CHECK(max_abs(a, b) < 1e-15);
    }
    // Constellation ports survive too.
    GaussianChannel g = make_symmetric_gaussian(6, 3);
    LayerSplit gs = trivial_split(g);
    LayerSplit gs2 = split_from_json(split_to_json(gs));
    double a = mutual_info(g, gs, {1u << 0, 0, 0});
    double b = mutual_info(g, gs2, {1u << 0, 0, 0});
    CHECK(max_abs(a, b) < 1e-15);
}
