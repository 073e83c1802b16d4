#include <cmath>

#include "channel.hpp"
#include "doctest.h"
#include "mi.hpp"
#include "split.hpp"

using namespace swsc;

namespace {

DiscreteChannel bsc_channel(double eps) {
    // Receiver 1 sees X through a BSC(eps); receiver 2 sees nothing.
    std::vector<double> law = {
        1 - eps, eps,      // x=0,w=0
        1 - eps, eps,      // x=0,w=1
        eps,     1 - eps,  // x=1,w=0
        eps,     1 - eps,  // x=1,w=1
    };
    return make_discrete_ic(2, 2, 2, 1, law, {0.5, 0.5}, {0.5, 0.5});
}

double h2(double p) { return -xlog2x(p) - xlog2x(1 - p); }

}  // namespace

TEST_CASE("noiseless binary identity channel carries one bit") {
    DiscreteChannel ch = bsc_channel(0.0);
    LayerSplit s = trivial_split(ch);
    CHECK(mutual_info(ch, s, {s.port_mask(0), 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("binary symmetric channel matches the closed form") {
    DiscreteChannel ch = bsc_channel(0.11);
    LayerSplit s = trivial_split(ch);
    double want = 1.0 - h2(0.11);
    CHECK(std::fabs(mutual_info(ch, s, {s.port_mask(0), 0, 0}) - want) < 1e-12);
}

TEST_CASE("bpsk over awgn at 0 dB against a seeded Monte Carlo oracle") {
    GaussianChannel ch = make_symmetric_gaussian(0.0, -120.0, "bpsk", "bpsk");
    LayerSplit s = trivial_split(ch);
    MiQuery q{s.port_mask(0), 0, 0};
    double quad = mutual_info(ch, s, q);
    McEstimate mc = mc_mutual_info(ch, s, q, 4000000, 77);
    CHECK(std::fabs(quad - mc.bits) < 1e-3);
}

TEST_CASE("chain rule over a discrete two-layer split") {
    Rng rng(5);
    for (int i = 0; i < 4; ++i) {
        DiscreteChannel ch = random_discrete_ic(rng, 4);
        ThreeLayerSplit three = compose_three_layer(ch.input_pmfs[0], 0.6, 0.2);
        LayerSplit split;
        split.ports.push_back(erasure_port_split(ch.input_pmfs[0], 0.37));
        PortSplit w;
        w.layer_pmfs = {ch.input_pmfs[1]};
        w.table.resize(ch.input_pmfs[1].size());
        for (size_t k = 0; k < w.table.size(); ++k) w.table[k] = static_cast<int>(k);
        w.target = ch.input_pmfs[1];
        split.ports.push_back(w);
        for (int r = 0; r < 2; ++r)
            CHECK(chain_rule_residual(ch, split, {0, 1}, r) < 1e-12);
        (void)three;
    }
}

TEST_CASE("chain rule over the three-layer 8PAM decomposition") {
    GaussianChannel ch = make_symmetric_gaussian(10.0, 4.0, "8pam_3bpsk", "bpsk");
    LayerSplit s = trivial_split(ch);
    CHECK(chain_rule_residual(ch, s, {0, 1, 2}, 0) < 1e-6);
    CHECK(chain_rule_residual(ch, s, {2, 1, 0}, 0) < 1e-6);
}

TEST_CASE("a constant layer carries no information") {
    Rng rng(11);
    DiscreteChannel ch = random_discrete_ic(rng, 3);
    // Degenerate refinement: second layer fixed to one symbol.
    PortSplit p;
    p.layer_pmfs = {ch.input_pmfs[0], {1.0}};
    int nx = static_cast<int>(ch.input_pmfs[0].size());
    p.table.resize(nx);
    for (int i = 0; i < nx; ++i) p.table[i] = i;
    p.target = ch.input_pmfs[0];
    LayerSplit split;
    split.ports.push_back(p);
    PortSplit w;
    w.layer_pmfs = {ch.input_pmfs[1]};
    w.table.resize(ch.input_pmfs[1].size());
    for (size_t k = 0; k < w.table.size(); ++k) w.table[k] = static_cast<int>(k);
    split.ports.push_back(w);
    CHECK(mutual_info(ch, split, {1u << 1, 0, 0}) < 1e-12);
    CHECK(chain_rule_residual(ch, split, {0, 1}, 0) < 1e-12);
}

TEST_CASE("nonnegativity and data processing across random queries") {
    Rng rng(21);
    for (int i = 0; i < 5; ++i) {
        DiscreteChannel ch = random_discrete_ic(rng, 4);
        LayerSplit es;
        es.ports.push_back(erasure_port_split(ch.input_pmfs[0], 0.4));
        PortSplit w;
        w.layer_pmfs = {ch.input_pmfs[1]};
        w.table.resize(ch.input_pmfs[1].size());
        for (size_t k = 0; k < w.table.size(); ++k) w.table[k] = static_cast<int>(k);
        w.target = ch.input_pmfs[1];
        es.ports.push_back(w);
        for (int r = 0; r < 2; ++r) {
            double sub = mutual_info(ch, es, {1u << 0, 0, r});
            double full = mutual_info(ch, es, {es.port_mask(0), 0, r});
            CHECK(sub >= -1e-12);
            CHECK(sub <= full + 1e-12);
        }
    }
}

TEST_CASE("query validation") {
    Rng rng(31);
    DiscreteChannel ch = random_discrete_ic(rng, 3);
    LayerSplit s = trivial_split(ch);
    CHECK_THROWS(mutual_info(ch, s, {1u, 1u, 0}));    // overlapping sets
    CHECK_THROWS(mutual_info(ch, s, {1u << 7, 0, 0}));  // bad layer
    CHECK_THROWS(mutual_info(ch, s, {1u, 0, 5}));     // bad receiver
}

TEST_CASE("monte carlo covers stacked-antenna maps the quadrature rejects") {
    GaussianChannel ch;
    ch.maps[0] = make_higher_map(HigherMapKind::MimoAntenna);
    ch.maps[1] = make_higher_map(HigherMapKind::MimoAntenna);
    ch.g[0][0] = 1.0;
    ch.g[0][1] = 0.0;
    ch.g[1][0] = 0.0;
    ch.g[1][1] = 1.0;
    LayerSplit s = trivial_split(ch);
    MiQuery q{s.port_mask(0), 0, 0};
    CHECK_THROWS(mutual_info(ch, s, q));
    McEstimate mc = mc_mutual_info(ch, s, q, 20000, 5);
    CHECK(mc.bits > 0.0);
    CHECK(mc.bits < 4.0 + 1e-9);
}
