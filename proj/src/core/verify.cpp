#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swsc {

std::vector<DiscreteChannel> corpus_ics(int count, uint64_t seed) {
    std::vector<DiscreteChannel> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) out.push_back(random_discrete_ic(rng, 4));
    return out;
}

std::vector<DiscreteChannel> corpus_ics_small(int count, uint64_t seed) {
    std::vector<DiscreteChannel> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) out.push_back(random_discrete_ic(rng, 3));
    return out;
}

std::vector<DiscreteChannel> corpus_mac3(int count, uint64_t seed) {
    std::vector<DiscreteChannel> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        int a = 2 + static_cast<int>(rng.next_below(2));
        int b = 2 + static_cast<int>(rng.next_below(2));
        int y = 3 + static_cast<int>(rng.next_below(3));
        out.push_back(random_mac3(rng, a, b, 2, y));
    }
    return out;
}

DiscreteChannel hk4_example(uint64_t seed) {
    Rng rng(seed);
    // A 4x4-input interference channel with modest noise, viewed through
    // binary pair maps x(s,t), w(u,v).
    DiscreteChannel ic;
    ic.law.input_sizes = {4, 4};
    ic.law.output_sizes = {3, 3};
    int fo = 9;
    ic.law.law.resize(16 * fo);
    for (int in = 0; in < 16; ++in) {
        Pmf row(fo);
        double s = 0;
        for (double& v : row) {
            v = 0.05 + rng.next_double();
            s += v;
        }
        for (double& v : row) v /= s;
        double s2 = 0;
        for (int o = 0; o < fo - 1; ++o) s2 += row[o];
        row[fo - 1] = 1.0 - s2;
        for (int o = 0; o < fo; ++o) ic.law.law[in * fo + o] = row[o];
    }
    ic.input_pmfs = {Pmf(4, 0.25), Pmf(4, 0.25)};
    ic.validate();
    std::vector<int> pair_map = {0, 1, 2, 3};  // (a,b) -> 2a + b
    return hk_channel_view(ic, 2, 2, 2, 2, pair_map, pair_map, {0.5, 0.5},
                           {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5});
}

// ---------------------------------------------------------------------------

SuiteResult verify_lemma1(int channels, int alpha_grid) {
    SuiteResult res{"lemma1", false, 0.0, 1e-12, ""};
    auto corpus = corpus_ics(channels);
    for (const auto& ch : corpus) {
        IcModel m;
        m.d = ch;
        LayerSplit ts = trivial_split(ch);
        uint32_t mw = ts.port_mask(1), mx = ts.port_mask(0);
        for (int r = 0; r < 2; ++r) {
            double iw = mutual_info(ch, ts, {mw, 0, r});
            double iwx = mutual_info(ch, ts, {mw, mx, r});
            for (int ai = 0; ai < alpha_grid; ++ai) {
                double alpha = static_cast<double>(ai) / (alpha_grid - 1);
                LayerSplit es = erasure_ic_split(m, 0, alpha);
                // X1 is global layer 0; W is the last layer.
                double lhs = mutual_info(ch, es, {es.port_mask(1), 1u << 0, r});
                double rhs = alpha * iw + (1.0 - alpha) * iwx;
                res.max_residual = std::max(res.max_residual, std::fabs(lhs - rhs));
            }
        }
    }
    res.pass = res.max_residual < res.threshold;
    res.detail = std::to_string(channels) + " channels x " +
                 std::to_string(alpha_grid) + "-point alpha grid, both receivers";
    return res;
}

SuiteResult verify_eq5(int grid) {
    SuiteResult res{"eq5", false, 0.0, 0.5, ""};
    auto corpus = corpus_ics(20);
    long mismatches = 0;
    for (const auto& ch : corpus) {
        IcModel m;
        m.d = ch;
        RateRegion2 direct = region_snd(m);
        RateRegion2 decomposed = region_snd_decomposed(m);
        double r1m = std::max(direct.max_r1(), decomposed.max_r1()) * 1.05 + 1e-3;
        double r2m = std::max(direct.max_r2(), decomposed.max_r2()) * 1.05 + 1e-3;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                double r1 = r1m * i / (grid - 1);
                double r2 = r2m * j / (grid - 1);
                if (direct.contains(r1, r2, 0.0) != decomposed.contains(r1, r2, 0.0))
                    ++mismatches;
            }
    }
    res.max_residual = static_cast<double>(mismatches);
    res.pass = mismatches == 0;
    res.detail = "20 channels, " + std::to_string(grid) + "x" + std::to_string(grid) +
                 " grid, " + std::to_string(mismatches) + " mismatches";
    return res;
}

SuiteResult verify_fm(int vectors, uint64_t seed) {
    SuiteResult res{"fm", false, 0.0, 0.5, ""};
    Rng rng(seed);
    long fails = 0;
    for (int it = 0; it < vectors; ++it) {
        // Dyadic inputs keep every elimination step exact in doubles.
        auto dy = [&]() { return static_cast<double>(rng.next_below(1024)) / 1024.0; };
        double a1 = dy(), a2 = dy(), b1 = dy(), b2 = dy(), c1 = dy(), c2 = dy();
        std::vector<PartConstraint> cons = {
            {1u, 0u, a1}, {1u, 0u, a2},  // first part of message 1, both receivers
            {2u, 0u, b1}, {2u, 0u, b2},  // second part
            {0u, 1u, c1}, {0u, 1u, c2},  // unsplit message 2
        };
        Cell cell = fm_project(2, 1, cons);
        double want_r1 = std::min(a1, a2) + std::min(b1, b2);
        double want_r2 = std::min(c1, c2);
        bool ok = cell.r1_max == want_r1 && cell.r2_max == want_r2 &&
                  cell.sum_max >= want_r1 + want_r2;
        if (!ok) ++fails;
    }
    res.max_residual = static_cast<double>(fails);
    res.pass = fails == 0;
    res.detail = std::to_string(vectors - fails) + "/" + std::to_string(vectors) +
                 " exact closed-form matches";
    return res;
}

SuiteResult verify_prop1(int channels, uint64_t seed) {
    SuiteResult res{"prop1", false, 0.0, 1e-12, ""};
    auto corpus = corpus_ics(channels, seed);
    SwscOrder d1{{{0, -1}, {1, 0}}};
    SwscOrder d2{{{0, -1}, {1, -1}}};
    for (const auto& ch : corpus) {
        IcModel m;
        m.d = ch;
        LayerSplit ts = trivial_split(ch);
        uint32_t mx = ts.port_mask(0), mw = ts.port_mask(1);
        for (double alpha : {0.0, 0.25, 0.6, 1.0}) {
            LayerSplit es = erasure_ic_split(m, 0, alpha);
            RateRegion2 r = region_swsc(m, es, d1, d2);
            // Direct statement of the achievable rectangle.
            uint32_t x1 = 1u << 0;
            uint32_t xall = es.port_mask(0);
            uint32_t w = es.port_mask(1);
            double r1_y1 = mutual_info(ch, es, {x1, 0, 0}) +
                           mutual_info(ch, es, {xall & ~x1, x1 | w, 0});
            double r1_y2 = mutual_info(ch, ts, {mx, 0, 1});
            double r2_y1 = mutual_info(ch, es, {w, x1, 0});
            double r2_y2 = mutual_info(ch, ts, {mw, mx, 1});
            double want_r1 = std::min(r1_y1, r1_y2);
            double want_r2 = std::min(r2_y1, r2_y2);
            res.max_residual = std::max(res.max_residual,
                                        std::fabs(r.cells[0].r1_max - want_r1));
            res.max_residual = std::max(res.max_residual,
                                        std::fabs(r.cells[0].r2_max - want_r2));
        }
    }
    res.pass = res.max_residual < res.threshold;
    res.detail = std::to_string(channels) + " channels x 4 split points";
    return res;
}

SuiteResult verify_prop2(int grid) {
    SuiteResult res{"prop2", false, 0.0, 0.02, ""};
    auto corpus = corpus_ics_small(3);
    double worst = 0.0;
    for (const auto& ch : corpus) {
        IcModel m;
        m.d = ch;
        RateRegion2 target = region_intersection(region_sd(m, 0), region_sd(m, 1));
        RateRegion2 uni = region_swsc_union(m, OrderFamily::CornerPair, grid);
        EnvelopeGap gap = compare_regions(target, uni, 256);
        worst = std::max(worst, gap.max_gap);
        // The union must also stay inside the full region;
        RateRegion2 snd = region_snd(m);
        if (!region_contained_in(uni, snd, 200, tol().containment))
            worst = std::max(worst, 1.0);
    }
    res.max_residual = worst;
    res.pass = worst <= res.threshold;
    res.detail = "3 channels, grid " + std::to_string(grid) +
                 "; union covers the joint-decoding pentagon intersection";
    return res;
}

SuiteResult verify_thm2(int grid, int channels) {
    SuiteResult res{"thm2", false, 0.0, 0.02, ""};
    auto corpus = corpus_ics_small(channels);
    double worst_gap = 0.0, worst_overshoot = 0.0;
    for (const auto& ch : corpus) {
        IcModel m;
        m.d = ch;
        EnvelopeGap gap = swsc_union_vs_snd(m, grid, 256);
        worst_gap = std::max(worst_gap, gap.max_gap);
        worst_overshoot = std::max(worst_overshoot, gap.max_overshoot);
    }
    res.max_residual = worst_gap;
    res.pass = worst_gap <= res.threshold && worst_overshoot <= 1e-9;
    std::ostringstream os;
    os << channels << " channels, grid " << grid << ", max gap " << worst_gap
       << ", overshoot " << worst_overshoot;
    res.detail = os.str();
    return res;
}

SuiteResult verify_thm3(int eq39_grid, int coverage_grid) {
    SuiteResult res{"thm3", false, 0.0, 0.02, ""};
    // Corner-combination identity on random three-user MACs.
    double eq39_resid = 0.0;
    for (const auto& mac : corpus_mac3(5)) {
        Mac3Region reg = region_mac3(mac, {0, 1, 2}, 0);
        for (int i = 0; i < eq39_grid; ++i)
            for (int j = 0; j < eq39_grid; ++j) {
                double alpha = static_cast<double>(i) / (eq39_grid - 1);
                double beta = static_cast<double>(j) / (eq39_grid - 1);
                for (int lam = 1; lam <= 3; ++lam) {
                    auto direct = mac3_rate_direct(mac, alpha, beta, lam);
                    auto comb = mac3_rate_from_corners(reg, alpha, beta, lam);
                    for (int k = 0; k < 3; ++k)
                        eq39_resid = std::max(eq39_resid,
                                              std::fabs(direct[k] - comb[k]));
                }
            }
    }
    // Vertex coverage of the auxiliary region on the four-sender example.
    DiscreteChannel ch4 = hk4_example();
    HkCoverage cov = hk_coverage(ch4, coverage_grid);
    res.max_residual = std::max(eq39_resid, cov.worst_shortfall);
    res.pass = eq39_resid < 1e-12 && cov.worst_shortfall <= res.threshold;
    std::ostringstream os;
    os << "corner-combination residual " << eq39_resid << " (5 MACs, grid "
       << eq39_grid << "); vertex shortfall " << cov.worst_shortfall << " over "
       << cov.vertex_count << " vertices (grid " << coverage_grid << ")";
    res.detail = os.str();
    return res;
}

SuiteResult run_suite(const std::string& name) {
    if (name == "lemma1") return verify_lemma1();
    if (name == "eq5") return verify_eq5();
    if (name == "fm") return verify_fm();
    if (name == "prop1") return verify_prop1();
    if (name == "prop2") return verify_prop2();
    if (name == "thm2") return verify_thm2();
    if (name == "thm3") return verify_thm3();
    throw ConfigError("unknown verify suite: " + name);
}

std::vector<std::string> suite_names() {
    return {"lemma1", "eq5", "fm", "prop1", "prop2", "thm2", "thm3"};
}

}  // namespace swsc
