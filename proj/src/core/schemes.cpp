#include "schemes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace swsc {

namespace {

PortSplit base_port(const IcModel& m, int port) {
    if (m.gaussian) return port_from_map(m.g.maps[port]);
    PortSplit p;
    p.layer_pmfs = {m.d.input_pmfs[port]};
    p.table.resize(m.d.input_pmfs[port].size());
    for (size_t i = 0; i < p.table.size(); ++i) p.table[i] = static_cast<int>(i);
    p.target = m.d.input_pmfs[port];
    return p;
}

// Symbol alphabet a Gaussian sender's erasure splits act on: the map output
// per flat layer combo under uniform inputs.
std::pair<Pmf, std::vector<Cplx>> gaussian_symbol_alphabet(const GaussianChannel& g,
                                                           int port) {
    const SymbolMap& map = g.maps[port];
    int n = map.flat();
    Pmf p(n, 1.0 / n);
    std::vector<Cplx> pts(map.values.begin(), map.values.end());
    return {p, pts};
}

}  // namespace

LayerSplit erasure_ic_split(const IcModel& m, int port, double alpha) {
    LayerSplit split;
    for (int p = 0; p < 2; ++p) {
        if (p != port) {
            split.ports.push_back(base_port(m, p));
            continue;
        }
        if (m.gaussian) {
            auto [pmf, pts] = gaussian_symbol_alphabet(m.g, p);
            split.ports.push_back(to_constellation(erasure_port_split(pmf, alpha), pts));
        } else {
            split.ports.push_back(erasure_port_split(m.d.input_pmfs[p], alpha));
        }
    }
    return split;
}

ComposedIcSplit composed_ic_split(const IcModel& m, int port, double alpha_prime,
                                  double alpha_dblprime) {
    ComposedIcSplit out;
    ThreeLayerSplit three;
    if (m.gaussian) {
        auto [pmf, pts] = gaussian_symbol_alphabet(m.g, port);
        three = compose_three_layer(pmf, alpha_prime, alpha_dblprime);
        three.port = to_constellation(three.port, pts);
    } else {
        three = compose_three_layer(m.d.input_pmfs[port], alpha_prime, alpha_dblprime);
    }
    out.alpha_prime_coarser = three.alpha_prime_coarser;
    out.alpha_coarse = three.alpha_coarse;
    out.alpha_fine = three.alpha_fine;
    for (int p = 0; p < 2; ++p)
        out.split.ports.push_back(p == port ? three.port : base_port(m, p));
    return out;
}

// ---------------------------------------------------------------------------

std::string SwscOrder::to_string() const {
    std::string s;
    for (const auto& st : steps) {
        if (!s.empty()) s += ">";
        s += "m" + std::to_string(st.stream + 1) + "@" + std::to_string(st.lag);
    }
    return s;
}

SwscOrder parse_swsc_order(const std::string& text) {
    SwscOrder order;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '>')) {
        size_t at = tok.find('@');
        if (at == std::string::npos || tok.size() < 4 || tok[0] != 'm')
            throw ConfigError("bad order step: " + tok);
        int stream = std::stoi(tok.substr(1, at - 1)) - 1;
        int lag = std::stoi(tok.substr(at + 1));
        if (stream != 0 && stream != 1) throw ConfigError("bad stream in order: " + tok);
        if (lag > 0) throw ConfigError("order lag must be <= 0: " + tok);
        order.steps.push_back({stream, lag});
    }
    if (order.steps.empty() || order.steps.size() > 2)
        throw ConfigError("order must list one or two steps");
    if (order.steps.size() == 2 && order.steps[0].stream == order.steps[1].stream)
        throw ConfigError("order lists one stream twice");
    return order;
}

std::pair<SwscOrder, SwscOrder> parse_order_pair(const std::string& text) {
    std::optional<SwscOrder> d1, d2;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        if (part.rfind("d1=", 0) == 0)
            d1 = parse_swsc_order(part.substr(3));
        else if (part.rfind("d2=", 0) == 0)
            d2 = parse_swsc_order(part.substr(3));
        else
            throw ConfigError("order spec must look like d1=...;d2=...");
    }
    if (!d1 || !d2) throw ConfigError("order spec must give both d1 and d2");
    return {*d1, *d2};
}

std::vector<int> swsc_layer_order(const SwscOrder& order, int k_layers, int l_layers) {
    const int counts[2] = {k_layers, l_layers};
    const int offset[2] = {0, k_layers};
    struct Entry {
        int time;
        int rank;
        int layer;
    };
    std::vector<Entry> entries;
    for (size_t rank = 0; rank < order.steps.size(); ++rank) {
        const auto& st = order.steps[rank];
        int delay = -st.lag;
        int extra = delay - (counts[st.stream] - 1);
        if (extra < 0)
            throw InfeasibleOrderError("lag " + std::to_string(st.lag) +
                                       " too small for a stream with " +
                                       std::to_string(counts[st.stream]) + " layers");
        for (int i = 0; i < counts[st.stream]; ++i)
            entries.push_back({i + extra, static_cast<int>(rank), offset[st.stream] + i});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.rank < b.rank;
    });
    std::vector<int> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.layer);
    return out;
}

std::vector<SwscOrder> feasible_orders(int k_layers, int l_layers, int receiver) {
    const int counts[2] = {k_layers, l_layers};
    int own = receiver, other = 1 - receiver;
    std::vector<SwscOrder> orders;
    orders.push_back({{{own, -(counts[own] - 1)}}});  // other stream as noise
    // Own first, other delayed by 0 .. counts[own]-1 extra blocks.
    for (int extra = counts[own] - 1; extra >= 0; --extra)
        orders.push_back({{{own, -(counts[own] - 1)},
                           {other, -(counts[other] - 1 + extra)}}});
    // Other first, own delayed by 1 .. counts[other]-1 extra blocks.
    for (int extra = 0; extra < counts[other]; ++extra)
        orders.push_back({{{other, -(counts[other] - 1)},
                           {own, -(counts[own] - 1 + extra)}}});
    return orders;
}

std::vector<std::pair<SwscOrder, SwscOrder>> three_one_order_family() {
    SwscOrder d1_full{{{0, -2}, {1, 0}}};     // own, then fresh other
    SwscOrder d1_lag{{{0, -2}, {1, -1}}};     // own, then one-block-old other
    SwscOrder d1_alone{{{0, -2}}};
    SwscOrder d2_full{{{0, -2}, {1, 0}}};
    SwscOrder d2_lag{{{0, -2}, {1, -1}}};
    SwscOrder d2_alone{{{1, 0}}};
    return {
        {d1_full, d2_lag},    // staggered conditioning, coarse group first
        {d1_lag, d2_full},    // swapped between the receivers
        {d1_alone, d2_alone}, // both single-user
        {d1_full, d2_alone},
        {d1_alone, d2_full},
    };
}

// ---------------------------------------------------------------------------

namespace {

struct BaseMi {
    double i_own[2];       // I(own; Y_k) with the other marginalized
    double i_own_cond[2];  // I(own; Y_k | other)
    double i_other[2];     // I(other; Y_k)
    double i_other_cond[2];
    double i_sum[2];  // I(X, W; Y_k)
};

BaseMi base_mi(const IcModel& m) {
    LayerSplit split = m.trivial();
    uint32_t mask[2] = {split.port_mask(0), split.port_mask(1)};
    BaseMi b{};
    for (int r = 0; r < 2; ++r) {
        int own = r, other = 1 - r;
        b.i_own[r] = m.mi(split, {mask[own], 0, r});
        b.i_own_cond[r] = m.mi(split, {mask[own], mask[other], r});
        b.i_other[r] = m.mi(split, {mask[other], 0, r});
        b.i_other_cond[r] = m.mi(split, {mask[other], mask[own], r});
        b.i_sum[r] = m.mi(split, {mask[0] | mask[1], 0, r});
    }
    return b;
}

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

RateRegion2 region_ian(const IcModel& m, const LayerSplit& split) {
    uint32_t mask0 = split.port_mask(0), mask1 = split.port_mask(1);
    Cell c;
    c.r1_max = clamp0(m.mi(split, {mask0, 0, 0}));
    c.r2_max = clamp0(m.mi(split, {mask1, 0, 1}));
    c.label = "ian";
    RateRegion2 r;
    r.cells.push_back(c);
    return r;
}

RateRegion2 region_ian(const IcModel& m) { return region_ian(m, m.trivial()); }

RateRegion2 region_scd(const IcModel& m) {
    BaseMi b = base_mi(m);
    Cell c;
    // Each receiver peels the interfering codeword first.
    c.r1_max = clamp0(std::min(b.i_own_cond[0], b.i_other[1]));
    c.r2_max = clamp0(std::min(b.i_other[0], b.i_own_cond[1]));
    c.label = "scd";
    RateRegion2 r;
    r.cells.push_back(c);
    return r;
}

RateRegion2 region_sd(const IcModel& m, int receiver) {
    BaseMi b = base_mi(m);
    Cell c;
    if (receiver == 0) {
        c.r1_max = clamp0(b.i_own_cond[0]);
        c.r2_max = clamp0(b.i_other_cond[0]);
    } else {
        c.r1_max = clamp0(b.i_other_cond[1]);
        c.r2_max = clamp0(b.i_own_cond[1]);
    }
    c.sum_max = clamp0(b.i_sum[receiver]);
    c.label = "sd" + std::to_string(receiver + 1);
    RateRegion2 r;
    r.cells.push_back(c);
    return r;
}

namespace {

// Per-receiver pieces of the simultaneous-decoding region: the single-user
// branch and the joint branch with the own-rate and sum-rate constraints.
RateRegion2 snd_receiver_piece(const BaseMi& b, int receiver) {
    RateRegion2 r;
    Cell single;
    Cell joint;
    if (receiver == 0) {
        single.r1_max = clamp0(b.i_own[0]);
        joint.r1_max = clamp0(b.i_own_cond[0]);
    } else {
        single.r2_max = clamp0(b.i_own[1]);
        joint.r2_max = clamp0(b.i_own_cond[1]);
    }
    joint.sum_max = clamp0(b.i_sum[receiver]);
    single.label = "ian" + std::to_string(receiver + 1);
    joint.label = "jnt" + std::to_string(receiver + 1);
    r.cells = {single, joint};
    return r;
}

}  // namespace

RateRegion2 region_snd(const IcModel& m) {
    BaseMi b = base_mi(m);
    RateRegion2 r =
        region_intersection(snd_receiver_piece(b, 0), snd_receiver_piece(b, 1));
    for (auto& c : r.cells) c.label = "snd:" + c.label;
    return r;
}

RateRegion2 region_ian_receiver_piece(const IcModel& m, int receiver) {
    BaseMi b = base_mi(m);
    Cell c;
    if (receiver == 0)
        c.r1_max = clamp0(b.i_own[0]);
    else
        c.r2_max = clamp0(b.i_own[1]);
    c.label = "ian" + std::to_string(receiver + 1);
    RateRegion2 r;
    r.cells.push_back(c);
    return r;
}

RateRegion2 region_snd_decomposed(const IcModel& m) {
    RateRegion2 r1 = region_union(region_ian_receiver_piece(m, 0), region_sd(m, 0));
    RateRegion2 r2 = region_union(region_ian_receiver_piece(m, 1), region_sd(m, 1));
    return region_intersection(r1, r2);
}

RateRegion2 region_scd_corner(const IcModel& m, int receiver, bool own_first) {
    BaseMi b = base_mi(m);
    Cell c;
    double own_rate, other_rate;
    if (own_first) {
        own_rate = b.i_own[receiver];
        other_rate = b.i_other_cond[receiver];
    } else {
        other_rate = b.i_other[receiver];
        own_rate = b.i_own_cond[receiver];
    }
    if (receiver == 0) {
        c.r1_max = clamp0(own_rate);
        c.r2_max = clamp0(other_rate);
    } else {
        c.r2_max = clamp0(own_rate);
        c.r1_max = clamp0(other_rate);
    }
    c.label = "scd" + std::to_string(receiver + 1);
    RateRegion2 r;
    r.cells.push_back(c);
    return r;
}

// ---------------------------------------------------------------------------

RateRegion2 region_rate_splitting(const IcModel& m, const LayerSplit& split,
                                  const RsOrder& d1, const RsOrder& d2) {
    const int s = split.ports[0].layers();
    const int t = split.ports[1].layers();
    const RsOrder* orders[2] = {&d1, &d2};
    std::vector<PartConstraint> cons;
    for (int r = 0; r < 2; ++r) {
        uint32_t seen = 0;
        uint32_t decoded_own = 0;
        for (const auto& [stream, part] : orders[r]->parts) {
            if (stream < 0 || stream > 1 || part < 0 ||
                part >= split.ports[stream].layers())
                throw InfeasibleOrderError("order references undefined part");
            int layer = split.layer_offset(stream) + part;
            if (seen >> layer & 1)
                throw InfeasibleOrderError("order repeats a part");
            double bound = m.mi(split, {1u << layer, seen, r});
            PartConstraint pc;
            if (stream == 0)
                pc.mask1 = 1u << part;
            else
                pc.mask2 = 1u << part;
            pc.rhs = clamp0(bound);
            cons.push_back(pc);
            seen |= 1u << layer;
            if (stream == r) decoded_own |= 1u << part;
        }
        uint32_t need = (1u << split.ports[r].layers()) - 1u;
        if (decoded_own != need)
            throw InfeasibleOrderError("receiver must decode all own parts");
    }
    Cell cell = fm_project(s, t, cons);
    cell.label = "rs";
    RateRegion2 out;
    out.cells.push_back(cell);
    return out;
}

namespace {

Cell swsc_cell(const std::function<double(const MiQuery&)>& mi_fn,
               const LayerSplit& split, const SwscOrder& d1, const SwscOrder& d2) {
    const int K = split.ports[0].layers();
    const int L = split.ports[1].layers();
    const SwscOrder* orders[2] = {&d1, &d2};
    Cell cell;
    for (int r = 0; r < 2; ++r) {
        const SwscOrder& d = *orders[r];
        if (!d.decodes(r))
            throw InfeasibleOrderError("receiver must decode its own stream");
        std::vector<int> lo = swsc_layer_order(d, K, L);
        double bound[2] = {0.0, 0.0};
        uint32_t seen = 0;
        for (int layer : lo) {
            bound[split.port_of_layer(layer)] += mi_fn({1u << layer, seen, r});
            seen |= 1u << layer;
        }
        if (d.decodes(0)) cell.r1_max = std::min(cell.r1_max, clamp0(bound[0]));
        if (d.decodes(1)) cell.r2_max = std::min(cell.r2_max, clamp0(bound[1]));
    }
    cell.label = "swsc";
    return cell;
}

}  // namespace

RateRegion2 region_swsc(const IcModel& m, const LayerSplit& split,
                        const SwscOrder& d1, const SwscOrder& d2) {
    RateRegion2 out;
    out.cells.push_back(swsc_cell(
        [&](const MiQuery& q) { return m.mi(split, q); }, split, d1, d2));
    return out;
}

std::vector<Cell> swsc_family_cells_from_base(const SwscBaseMi& b, double ac,
                                              double af, size_t n_pairs) {
    // Chain sums of the erasure family collapse to convex combinations of
    // the unsplit informations; the five order pairs differ in which
    // receiver conditions on the coarse group and who decodes what.
    auto x_sum = [&](int r, double a) {
        return (1.0 - a) * b.x[r] + a * b.x_w[r];
    };
    auto w_term = [&](int r, double a) {
        return a * b.w[r] + (1.0 - a) * b.w_x[r];
    };
    std::vector<Cell> cells;
    auto push = [&](double r1, double r2) {
        Cell c;
        c.r1_max = clamp0(r1);
        c.r2_max = clamp0(r2);
        cells.push_back(c);
    };
    push(std::min(x_sum(0, ac), x_sum(1, af)),
         std::min(w_term(0, ac), w_term(1, af)));
    if (n_pairs < 2) return cells;
    push(std::min(x_sum(0, af), x_sum(1, ac)),
         std::min(w_term(0, af), w_term(1, ac)));
    if (n_pairs < 5) return cells;
    push(b.x[0], b.w[1]);
    push(x_sum(0, ac), std::min(w_term(0, ac), b.w[1]));
    push(std::min(b.x[0], x_sum(1, ac)), w_term(1, ac));
    return cells;
}

SwscBaseMi swsc_base_mi(const IcModel& m) {
    LayerSplit split = m.trivial();
    uint32_t mx = split.port_mask(0), mw = split.port_mask(1);
    SwscBaseMi b{};
    for (int r = 0; r < 2; ++r) {
        b.x[r] = m.mi(split, {mx, 0, r});
        b.x_w[r] = m.mi(split, {mx, mw, r});
        b.w[r] = m.mi(split, {mw, 0, r});
        b.w_x[r] = m.mi(split, {mw, mx, r});
    }
    return b;
}

RateRegion2 region_swsc_union(const IcModel& m, OrderFamily family, int grid) {
    if (grid < 5) throw ConfigError("grid must be >= 5");
    auto pairs = three_one_order_family();
    size_t n_pairs = family == OrderFamily::CornerPair ? 2 : pairs.size();

    std::vector<std::pair<double, double>> alphas;
    for (int ic = 0; ic <= grid; ++ic)
        for (int jf = 0; jf <= ic; ++jf)
            alphas.emplace_back(static_cast<double>(ic) / grid,
                                static_cast<double>(jf) / grid);

    std::vector<std::vector<Cell>> per_point(alphas.size());
    if (m.gaussian) {
        // Quadrature per split point would be prohibitive; the erasure-family
        // chain sums are exact affine combinations of the unsplit
        // informations (the layer-splitting identity), so four quadrature
        // evaluations per receiver cover the whole sweep.
        SwscBaseMi base = swsc_base_mi(m);
        for (size_t idx = 0; idx < alphas.size(); ++idx) {
            auto [ac, af] = alphas[idx];
            per_point[idx] = swsc_family_cells_from_base(base, ac, af, n_pairs);
            for (size_t p = 0; p < per_point[idx].size(); ++p)
                per_point[idx][p].label = "swsc[" + format_double(ac) + "," +
                                          format_double(af) + "]#" +
                                          std::to_string(p);
        }
    } else {
        parallel_for(0, alphas.size(), 0, [&](size_t idx) {
            auto [ac, af] = alphas[idx];
            ComposedIcSplit cs = composed_ic_split(m, 0, ac, af);
            // The order pairs reuse most conditioning patterns; memoize per
            // split.
            std::unordered_map<uint64_t, double> memo;
            auto mi_fn = [&](const MiQuery& q) {
                uint64_t key = (static_cast<uint64_t>(q.target_mask) << 34) |
                               (static_cast<uint64_t>(q.cond_mask) << 2) |
                               static_cast<uint64_t>(q.receiver);
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                double v = m.mi(cs.split, q);
                memo.emplace(key, v);
                return v;
            };
            for (size_t p = 0; p < n_pairs; ++p) {
                Cell c = swsc_cell(mi_fn, cs.split, pairs[p].first, pairs[p].second);
                c.label = "swsc[" + format_double(ac) + "," + format_double(af) +
                          "]#" + std::to_string(p);
                per_point[idx].push_back(c);
            }
        });
    }
    RateRegion2 out;
    for (const auto& cells : per_point)
        out.cells.insert(out.cells.end(), cells.begin(), cells.end());
    out.prune();
    return out;
}

// ---------------------------------------------------------------------------

bool Mac3Region::contains(const std::array<double, 3>& r, double slack) const {
    for (double v : r)
        if (v < -slack) return false;
    for (const auto& c : constraints) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            if (c.mask >> i & 1) s += r[i];
        if (s > c.rhs + slack) return false;
    }
    return true;
}

Mac3Region region_mac3(const DiscreteChannel& ch, const std::array<int, 3>& ports_abc,
                       int receiver) {
    LayerSplit split = trivial_split(ch);
    uint32_t A = split.port_mask(ports_abc[0]);
    uint32_t B = split.port_mask(ports_abc[1]);
    uint32_t C = split.port_mask(ports_abc[2]);
    auto I = [&](uint32_t tgt, uint32_t cond) {
        return mutual_info(ch, split, {tgt, cond, receiver});
    };
    Mac3Region mac;
    mac.constraints = {
        {1, I(A, B | C)},     {2, I(B, A | C)},     {4, I(C, A | B)},
        {3, I(A | B, C)},     {5, I(A | C, B)},     {6, I(B | C, A)},
        {7, I(A | B | C, 0)},
    };
    mac.corners[0] = {I(A, 0), I(B, A), I(C, A | B)};          // ABC
    mac.corners[1] = {I(A, B), I(B, 0), I(C, A | B)};          // BAC
    mac.corners[2] = {I(A, B | C), I(B, 0), I(C, B)};          // BCA
    mac.corners[3] = {I(A, B | C), I(B, C), I(C, 0)};          // CBA
    mac.corners[4] = {I(A, C), I(B, A | C), I(C, 0)};          // CAB
    mac.corners[5] = {I(A, 0), I(B, A | C), I(C, A)};          // ACB
    return mac;
}

std::array<double, 3> mac3_rate_from_corners(const Mac3Region& mac, double alpha,
                                             double beta, int lambda) {
    const auto& ABC = mac.corners[0];
    const auto& BAC = mac.corners[1];
    const auto& BCA = mac.corners[2];
    const auto& CBA = mac.corners[3];
    const auto& CAB = mac.corners[4];
    const auto& ACB = mac.corners[5];
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) {
        switch (lambda) {
            case 1:
                r[i] = (1 - alpha) * (1 - beta) * ABC[i] + alpha * (1 - beta) * BAC[i] +
                       beta * ACB[i];
                break;
            case 2:
                r[i] = (1 - alpha) * beta * CAB[i] + alpha * beta * CBA[i] +
                       (1 - beta) * BCA[i];
                break;
            case 3:
                r[i] = (1 - alpha) * (1 - beta) * BAC[i] + (1 - alpha) * beta * ACB[i] +
                       alpha * (1 - beta) * BCA[i] + alpha * beta * CAB[i];
                break;
            default:
                throw ConfigError("lambda must be 1, 2 or 3");
        }
    }
    return r;
}

std::array<double, 3> mac3_rate_direct(const DiscreteChannel& mac, double alpha,
                                       double beta, int lambda) {
    if (mac.ports() != 3) throw ConfigError("three-port channel required");
    LayerSplit split = mac3_split(mac.input_pmfs[0], mac.input_pmfs[1],
                                  mac.input_pmfs[2], alpha, beta);
    // Global layers: A1=0, A2=1, B1=2, B2=3, C=4.
    std::vector<int> order;
    switch (lambda) {
        case 1: order = {0, 2, 1, 4, 3}; break;  // A1 B1 A2 C B2
        case 2: order = {2, 4, 0, 3, 1}; break;  // B1 C A1 B2 A2
        case 3: order = {2, 0, 4, 1, 3}; break;  // B1 A1 C A2 B2
        default: throw ConfigError("lambda must be 1, 2 or 3");
    }
    auto stream_of = [&](int layer) { return layer <= 1 ? 0 : (layer <= 3 ? 1 : 2); };
    std::array<double, 3> r{};
    uint32_t seen = 0;
    for (int layer : order) {
        r[stream_of(layer)] += mutual_info(mac, split, {1u << layer, seen, 0});
        seen |= 1u << layer;
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Layer orders at receiver 1 over global indices S=0..2, T=3..4, U=5 and at
// receiver 2 with V=6..7 in place of T.
const int kHkOrders[12][6] = {
    {0, 3, 1, 2, 5, 4},  // 1: S1 T1 S2 S3 U T2
    {3, 5, 0, 4, 1, 2},  // 2: T1 U S1 T2 S2 S3
    {3, 0, 5, 1, 2, 4},  // 3: T1 S1 U S2 S3 T2
    {0, 1, 3, 2, 5, 4},  // 4: S1 S2 T1 S3 U T2
    {3, 5, 0, 1, 4, 2},  // 5: T1 U S1 S2 T2 S3
    {3, 0, 1, 5, 2, 4},  // 6: T1 S1 S2 U S3 T2
    {0, 6, 1, 2, 5, 7},  // 7: S1 V1 S2 S3 U V2
    {6, 5, 0, 7, 1, 2},  // 8: V1 U S1 V2 S2 S3
    {6, 0, 5, 1, 2, 7},  // 9: V1 S1 U S2 S3 V2
    {0, 1, 6, 2, 5, 7},  // 10: S1 S2 V1 S3 U V2
    {6, 5, 0, 1, 7, 2},  // 11: V1 U S1 S2 V2 S3
    {6, 0, 1, 5, 2, 7},  // 12: V1 S1 S2 U S3 V2
};

}  // namespace

RateRegion4 region_hk(const DiscreteChannel& ch4, const LayerSplit& split,
                      int lambda1, int lambda2) {
    if (ch4.ports() != 4 || ch4.receivers() != 2)
        throw ConfigError("four-port two-receiver channel required");
    if (lambda1 < 1 || lambda1 > 6 || lambda2 < 7 || lambda2 > 12)
        throw InfeasibleOrderError("lambda1 in 1..6, lambda2 in 7..12");
    if (split.ports.size() != 4 || split.ports[0].layers() != 3 ||
        split.ports[1].layers() != 2 || split.ports[2].layers() != 1 ||
        split.ports[3].layers() != 2)
        throw ConfigError("split must carry layers (3, 2, 1, 2)");

    // Coordinates: 0=R10 (S), 1=R11 (T), 2=R20 (U), 3=R22 (V).
    auto coord_of_port = [](int port) {
        switch (port) {
            case 0: return 0;
            case 1: return 1;
            case 2: return 2;
            default: return 3;
        }
    };
    RateRegion4 region;
    for (int r = 0; r < 2; ++r) {
        int lam = r == 0 ? lambda1 : lambda2;
        const int* order = kHkOrders[lam - 1];
        double acc[4] = {0, 0, 0, 0};
        uint32_t seen = 0;
        for (int i = 0; i < 6; ++i) {
            int layer = order[i];
            double v = mutual_info(ch4, split, {1u << layer, seen, r});
            acc[coord_of_port(split.port_of_layer(layer))] += v;
            seen |= 1u << layer;
        }
        if (r == 0) {
            region.constraints.push_back({1, clamp0(acc[0])});
            region.constraints.push_back({2, clamp0(acc[1])});
            region.constraints.push_back({4, clamp0(acc[2])});
        } else {
            region.constraints.push_back({1, clamp0(acc[0])});
            region.constraints.push_back({4, clamp0(acc[2])});
            region.constraints.push_back({8, clamp0(acc[3])});
        }
    }
    return region;
}

DiscreteChannel hk_channel_view(const DiscreteChannel& ic, int s_size, int t_size,
                                int u_size, int v_size,
                                const std::vector<int>& x_map,
                                const std::vector<int>& w_map,
                                const Pmf& ps, const Pmf& pt, const Pmf& pu,
                                const Pmf& pv) {
    if (ic.ports() != 2) throw ConfigError("two-port channel required");
    if (static_cast<int>(x_map.size()) != s_size * t_size ||
        static_cast<int>(w_map.size()) != u_size * v_size)
        throw ConfigError("map tables must cover (s,t) and (u,v)");
    DiscreteChannel out;
    out.law.input_sizes = {s_size, t_size, u_size, v_size};
    out.law.output_sizes = ic.law.output_sizes;
    int fo = ic.law.flat_outputs();
    out.law.law.resize(static_cast<size_t>(s_size) * t_size * u_size * v_size * fo);
    for (int s = 0; s < s_size; ++s)
        for (int t = 0; t < t_size; ++t)
            for (int u = 0; u < u_size; ++u)
                for (int v = 0; v < v_size; ++v) {
                    int x = x_map[s * t_size + t];
                    int w = w_map[u * v_size + v];
                    int in4 = ((s * t_size + t) * u_size + u) * v_size + v;
                    int in2 = x * ic.law.input_sizes[1] + w;
                    std::copy_n(&ic.law.law[static_cast<size_t>(in2) * fo], fo,
                                &out.law.law[static_cast<size_t>(in4) * fo]);
                }
    out.input_pmfs = {ps, pt, pu, pv};
    out.validate();
    return out;
}

}  // namespace swsc
