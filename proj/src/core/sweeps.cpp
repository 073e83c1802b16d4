#include "sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

namespace swsc {

IcAtoms ic_atoms(const IcModel& m) {
    LayerSplit split = m.trivial();
    uint32_t mx = split.port_mask(0), mw = split.port_mask(1);
    IcAtoms a{};
    for (int r = 0; r < 2; ++r) {
        a.x[r] = m.mi(split, {mx, 0, r});
        a.x_w[r] = m.mi(split, {mx, mw, r});
        a.w[r] = m.mi(split, {mw, 0, r});
        a.w_x[r] = m.mi(split, {mw, mx, r});
        a.xw[r] = m.mi(split, {mx | mw, 0, r});
    }
    return a;
}

namespace {

// Accumulates one receiver's per-part rates for a cascade scheme. Terms land
// in r1_terms / r2_terms indexed by part number within the stream.
void accumulate_receiver(const IcAtoms& at, int receiver,
                         const std::vector<double>& a, const std::vector<double>& b,
                         const std::vector<int>& order, std::vector<double>* x_terms,
                         std::vector<double>* w_terms) {
    int g = 0, h = 0;
    for (int stream : order) {
        if (stream == 0) {
            double reveal = a[g] - a[g + 1];
            double base = b[h] * at.x[receiver] + (1.0 - b[h]) * at.x_w[receiver];
            x_terms->at(g) = reveal * base;
            ++g;
        } else {
            double reveal = b[h] - b[h + 1];
            double base = a[g] * at.w[receiver] + (1.0 - a[g]) * at.w_x[receiver];
            w_terms->at(h) = reveal * base;
            ++h;
        }
    }
}

}  // namespace

std::pair<double, double> rs_rate_pair(const IcAtoms& atoms, const RsScheme& s) {
    const int sp = static_cast<int>(s.a_levels.size()) - 1;
    const int tp = static_cast<int>(s.b_levels.size()) - 1;
    const double kUnset = -1.0;
    std::vector<double> x1(sp, kUnset), w1(tp, kUnset);  // receiver 1 terms
    std::vector<double> x2(sp, kUnset), w2(tp, kUnset);  // receiver 2 terms
    accumulate_receiver(atoms, 0, s.a_levels, s.b_levels, s.d1, &x1, &w1);
    accumulate_receiver(atoms, 1, s.a_levels, s.b_levels, s.d2, &x2, &w2);
    double r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < sp; ++i) {
        if (x1[i] == kUnset) throw InfeasibleOrderError("receiver 1 misses an own part");
        r1 += x2[i] == kUnset ? x1[i] : std::min(x1[i], x2[i]);
    }
    for (int j = 0; j < tp; ++j) {
        if (w2[j] == kUnset) throw InfeasibleOrderError("receiver 2 misses an own part");
        r2 += w1[j] == kUnset ? w2[j] : std::min(w1[j], w2[j]);
    }
    return {r1, r2};
}

namespace {

// All peel sequences with `own` own parts and 0..other_max other-stream
// parts, both streams in cascade order: binary strings over {own bit, other
// bit}. Own stream id passed explicitly.
std::vector<std::vector<int>> peel_orders(int own_count, int other_max, int own_id) {
    std::vector<std::vector<int>> out;
    for (int k = 0; k <= other_max; ++k) {
        // Choose positions of the k other-stream parts among own_count + k.
        int n = own_count + k;
        std::vector<int> pick(k);
        for (int i = 0; i < k; ++i) pick[i] = i;
        for (;;) {
            std::vector<int> order(n, own_id);
            for (int p : pick) order[p] = 1 - own_id;
            out.push_back(order);
            int i = k - 1;
            while (i >= 0 && pick[i] == n - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (k == 0 && out.back().empty() && own_count == 0) out.pop_back();
    }
    return out;
}

std::vector<std::vector<double>> level_grid(int parts, int grid) {
    // Levels 1 = l0 >= l1 >= ... >= l_parts = 0 with the interior points on
    // the grid.
    std::vector<std::vector<double>> out;
    int interior = parts - 1;
    if (interior == 0) {
        out.push_back({1.0, 0.0});
        return out;
    }
    std::vector<int> idx(interior, 0);
    for (;;) {
        bool ok = true;
        for (int i = 1; i < interior; ++i)
            if (idx[i] > idx[i - 1]) {
                ok = false;
                break;
            }
        if (ok) {
            std::vector<double> lv(parts + 1);
            lv[0] = 1.0;
            lv[parts] = 0.0;
            for (int i = 0; i < interior; ++i)
                lv[i + 1] = static_cast<double>(idx[i]) / grid;
            bool mono = true;
            for (int i = 0; i + 1 <= parts; ++i)
                if (lv[i] < lv[i + 1]) {
                    mono = false;
                    break;
                }
            if (mono) out.push_back(lv);
        }
        int i = interior - 1;
        while (i >= 0 && idx[i] == grid) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

std::string describe_order(const std::vector<int>& d) {
    std::string s;
    int c[2] = {0, 0};
    for (int st : d) {
        if (!s.empty()) s += ">";
        s += "m" + std::to_string(st + 1) + std::to_string(++c[st]);
    }
    return s;
}

}  // namespace

namespace {

// Conditioning counters per part: own part i is peeled with oth_before[i]
// other-stream parts known; decoded other part j with own_before[j] known.
struct OrderDesc {
    std::vector<int> oth_before;  // size = own part count
    std::vector<int> own_before;  // size = decoded other parts
};

OrderDesc describe(const std::vector<int>& order, int own_id) {
    OrderDesc d;
    int g = 0, h = 0;
    for (int st : order) {
        if (st == own_id) {
            d.oth_before.push_back(h);
            ++g;
        } else {
            d.own_before.push_back(g);
            ++h;
        }
    }
    return d;
}

}  // namespace

RsGapResult rs_gap_demo(const IcModel& m, int max_parts, int grid) {
    IcAtoms at = ic_atoms(m);
    RsGapResult res;
    res.r2_max = at.w_x[1];
    RateRegion2 snd = region_snd(m);
    res.snd_corner_r1 = snd.max_r1_at(res.r2_max);
    res.best_rs_r1 = 0.0;

    std::mutex mu;
    for (int s = 1; s <= max_parts; ++s) {
        for (int t = 1; t <= max_parts; ++t) {
            auto a_grids = level_grid(s, grid);
            auto b_grids = level_grid(t, grid);
            auto d1_raw = peel_orders(s, t, 0);
            auto d2_raw = peel_orders(t, s, 1);
            std::vector<OrderDesc> d1s, d2s;
            for (const auto& o : d1_raw) d1s.push_back(describe(o, 0));
            for (const auto& o : d2_raw) d2s.push_back(describe(o, 1));
            const size_t n1 = d1s.size(), n2 = d2s.size();

            parallel_for(0, a_grids.size(), 0, [&](size_t ai) {
                const auto& a = a_grids[ai];
                double local_best = 0.0;
                size_t local_d1 = 0, local_d2 = 0;
                // Workspaces: per-order per-part terms, -1 when not decoded.
                std::vector<double> x1(n1 * s), w1(n1 * t);
                std::vector<double> x2(n2 * s), w2(n2 * t);
                for (const auto& b : b_grids) {
                    for (size_t o = 0; o < n1; ++o) {
                        const OrderDesc& d = d1s[o];
                        for (int i = 0; i < s; ++i) {
                            int h = d.oth_before[i];
                            x1[o * s + i] = (a[i] - a[i + 1]) *
                                            (b[h] * at.x[0] + (1.0 - b[h]) * at.x_w[0]);
                        }
                        for (int j = 0; j < t; ++j) w1[o * t + j] = -1.0;
                        for (size_t j = 0; j < d.own_before.size(); ++j) {
                            int g = d.own_before[j];
                            w1[o * t + j] = (b[j] - b[j + 1]) *
                                            (a[g] * at.w[0] + (1.0 - a[g]) * at.w_x[0]);
                        }
                    }
                    for (size_t o = 0; o < n2; ++o) {
                        const OrderDesc& d = d2s[o];
                        for (int j = 0; j < t; ++j) {
                            int g = d.oth_before[j];
                            w2[o * t + j] = (b[j] - b[j + 1]) *
                                            (a[g] * at.w[1] + (1.0 - a[g]) * at.w_x[1]);
                        }
                        for (int i = 0; i < s; ++i) x2[o * s + i] = -1.0;
                        for (size_t i = 0; i < d.own_before.size(); ++i) {
                            int h = d.own_before[i];
                            x2[o * s + i] = (a[i] - a[i + 1]) *
                                            (b[h] * at.x[1] + (1.0 - b[h]) * at.x_w[1]);
                        }
                    }
                    for (size_t o2 = 0; o2 < n2; ++o2) {
                        for (size_t o1 = 0; o1 < n1; ++o1) {
                            double r2 = 0.0;
                            for (int j = 0; j < t; ++j) {
                                double v2 = w2[o2 * t + j];
                                double v1 = w1[o1 * t + j];
                                r2 += v1 < 0.0 ? v2 : std::min(v1, v2);
                            }
                            if (r2 < res.r2_max - 1e-9) continue;
                            double r1 = 0.0;
                            for (int i = 0; i < s; ++i) {
                                double v1 = x1[o1 * s + i];
                                double v2 = x2[o2 * s + i];
                                r1 += v2 < 0.0 ? v1 : std::min(v1, v2);
                            }
                            if (r1 > local_best) {
                                local_best = r1;
                                local_d1 = o1;
                                local_d2 = o2;
                            }
                        }
                    }
                }
                std::lock_guard<std::mutex> lock(mu);
                if (local_best > res.best_rs_r1) {
                    res.best_rs_r1 = local_best;
                    res.best_s = s;
                    res.best_t = t;
                    res.best_scheme = "s=" + std::to_string(s) + ",t=" +
                                      std::to_string(t) + ",d1=" +
                                      describe_order(d1_raw[local_d1]) + ",d2=" +
                                      describe_order(d2_raw[local_d2]);
                }
            });
        }
    }
    res.margin = res.snd_corner_r1 - res.best_rs_r1;
    return res;
}

// ---------------------------------------------------------------------------

EnvelopeGap compare_regions(const RateRegion2& outer, const RateRegion2& inner,
                            int samples) {
    EnvelopeGap g;
    std::set<double> xs;
    double r1m_outer = outer.max_r1();
    double r1m_inner = inner.max_r1();
    for (const auto& p : outer.boundary(samples)) xs.insert(p.r1);
    for (const auto& p : inner.boundary(samples)) xs.insert(p.r1);
    // Envelopes jump at breakpoints the two regions compute through different
    // arithmetic; sampling a nudge to the left compares left limits on both
    // sides instead of straddling a one-ulp edge.
    const double nudge = 1e-12;
    for (double x : xs) {
        if (x > r1m_outer && x > r1m_inner) continue;
        double xs_left = std::max(0.0, x - nudge);
        double to = outer.top_at(xs_left);
        double ti = inner.top_at(xs_left);
        if (ti >= 0.0 && to >= 0.0) {
            g.max_gap = std::max(g.max_gap, to - ti);
            g.max_overshoot = std::max(g.max_overshoot, ti - to);
        } else if (ti >= 0.0 && to < 0.0) {
            g.max_overshoot = std::max(g.max_overshoot, x - r1m_outer);
        }
    }
    g.r1max_gap = std::max(0.0, r1m_outer - r1m_inner);
    g.max_gap = std::max(g.max_gap, g.r1max_gap);
    return g;
}

EnvelopeGap swsc_union_vs_snd(const IcModel& m, int grid, int samples) {
    RateRegion2 snd = region_snd(m);
    RateRegion2 uni = region_swsc_union(m, OrderFamily::FullFamily, grid);
    return compare_regions(snd, uni, samples);
}

// ---------------------------------------------------------------------------

HkCoverage hk_coverage(const DiscreteChannel& ch4, int grid) {
    // Receiver 1 decodes (R10, R11, R20) over (S, T, U); receiver 2 decodes
    // (R10, R22, R20) over (S, V, U).
    Mac3Region mac1 = region_mac3(ch4, {0, 1, 2}, 0);
    Mac3Region mac2 = region_mac3(ch4, {0, 3, 2}, 1);

    RateRegion4 aux;
    auto add = [&](const Mac3Region& mac, const std::array<int, 3>& coord_of) {
        for (const auto& c : mac.constraints) {
            Constraint4 c4;
            for (int i = 0; i < 3; ++i)
                if (c.mask >> i & 1) c4.mask |= 1 << coord_of[i];
            c4.rhs = c.rhs;
            aux.constraints.push_back(c4);
        }
    };
    add(mac1, {0, 1, 2});  // R10, R11, R20
    add(mac2, {0, 3, 2});  // R10, R22, R20
    auto vertices = region4_vertices(aux);

    // All receiver triples over (alpha, beta, lambda); grids are independent
    // per receiver, so coverage decomposes per receiver.
    auto triples = [&](const Mac3Region& mac) {
        std::vector<std::array<double, 3>> out;
        out.reserve(static_cast<size_t>(grid + 1) * (grid + 1) * 3);
        for (int i = 0; i <= grid; ++i)
            for (int j = 0; j <= grid; ++j)
                for (int lam = 1; lam <= 3; ++lam)
                    out.push_back(mac3_rate_from_corners(
                        mac, static_cast<double>(i) / grid,
                        static_cast<double>(j) / grid, lam));
        return out;
    };
    auto t1 = triples(mac1);
    auto t2 = triples(mac2);

    HkCoverage cov;
    cov.vertex_count = static_cast<int>(vertices.size());
    for (const auto& v : vertices) {
        double best1 = kUnbounded, best2 = kUnbounded;
        for (const auto& r : t1)
            best1 = std::min(best1,
                             std::max({v[0] - r[0], v[1] - r[1], v[2] - r[2]}));
        for (const auto& r : t2)
            best2 = std::min(best2,
                             std::max({v[0] - r[0], v[3] - r[1], v[2] - r[2]}));
        double shortfall = std::max(0.0, std::max(best1, best2));
        cov.worst_shortfall = std::max(cov.worst_shortfall, shortfall);
    }
    return cov;
}

// ---------------------------------------------------------------------------

double ian_substituted_rate(const GaussianChannel& ch, int receiver) {
    GaussianChannel sub = gaussian_substituted(ch, receiver);
    LayerSplit split = trivial_split(sub);
    return mutual_info(sub, split, {split.port_mask(0), 0, 0});
}

SwcmOperatingPoint best_swcm_orders(const IcModel& m) {
    LayerSplit split = m.trivial();
    int K = split.ports[0].layers();
    int L = split.ports[1].layers();
    SwcmOperatingPoint best;
    best.symmetric_rate = -1.0;
    for (const auto& d1 : feasible_orders(K, L, 0))
        for (const auto& d2 : feasible_orders(K, L, 1)) {
            double r = region_swsc(m, split, d1, d2).max_symmetric();
            if (r > best.symmetric_rate) {
                best.symmetric_rate = r;
                best.d1 = d1;
                best.d2 = d2;
            }
        }
    return best;
}

std::vector<CurvePoint> theory_curve(double snr_db, const std::vector<double>& inr_db,
                                     const std::string& map1, const std::string& map2) {
    std::vector<CurvePoint> out;
    for (double inr : inr_db) {
        GaussianChannel ch = make_symmetric_gaussian(snr_db, inr, map1, map2);
        IcModel m;
        m.gaussian = true;
        m.g = ch;
        CurvePoint p;
        p.inr_db = inr;
        p.ian_subst = std::min(ian_substituted_rate(ch, 0), ian_substituted_rate(ch, 1));
        p.ian_marginal = region_ian(m).max_symmetric();
        p.swcm = best_swcm_orders(m).symmetric_rate;
        p.snd = region_snd(m).max_symmetric();
        out.push_back(p);
    }
    return out;
}

}  // namespace swsc
