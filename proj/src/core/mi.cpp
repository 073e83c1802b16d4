#include "mi.hpp"

#include <algorithm>
#include <cmath>

namespace swsc {

namespace {

constexpr double kLog2e = 1.4426950408889634073599246810019;
constexpr double kInvSqrtPi = 0.56418958354775628694807945156077;

struct LayerEnum {
    std::vector<int> sizes;          // global layer sizes
    std::vector<int> target_layers;  // global indices, ascending
    std::vector<int> cond_layers;
    int a_count = 1;
    int b_count = 1;

    LayerEnum(const LayerSplit& split, const MiQuery& q) {
        int n = split.total_layers();
        if ((q.target_mask & q.cond_mask) != 0)
            throw SwscError("mi query: target and conditioned sets overlap");
        if (q.target_mask == 0) throw SwscError("mi query: empty target set");
        uint32_t valid = split.all_mask();
        if ((q.target_mask | q.cond_mask) & ~valid)
            throw SwscError("mi query: invalid layer index");
        sizes.resize(n);
        for (int l = 0; l < n; ++l) {
            sizes[l] = split.layer_size(l);
            if (q.target_mask >> l & 1) {
                target_layers.push_back(l);
                a_count *= sizes[l];
            } else if (q.cond_mask >> l & 1) {
                cond_layers.push_back(l);
                b_count *= sizes[l];
            }
        }
    }

    int a_index(const std::vector<int>& digits) const {
        int f = 0;
        for (int l : target_layers) f = f * sizes[l] + digits[l];
        return f;
    }
    int b_index(const std::vector<int>& digits) const {
        int f = 0;
        for (int l : cond_layers) f = f * sizes[l] + digits[l];
        return f;
    }
};

// Per-config transmit description shared by the quadrature and MC paths.
struct GaussConfigs {
    std::vector<double> prob;
    std::vector<int> a_idx, b_idx;
    std::vector<Cplx> mean;  // flat config * dims_out entries
    int dims_out = 1;        // complex dims per antenna handled separately
    int a_count = 1, b_count = 1;
    bool is_complex = false;
};

GaussConfigs enumerate_gauss(const GaussianChannel& ch, const LayerSplit& split,
                             const MiQuery& q) {
    if (split.ports.size() != 2)
        throw SwscError("gaussian channel expects a two-sender split");
    for (const auto& p : split.ports)
        if (!p.is_constellation())
            throw SwscError("gaussian channel needs constellation port splits");
    if (split.ports[0].out_dim != split.ports[1].out_dim)
        throw SwscError("senders must agree on antenna count");

    LayerEnum en(split, q);
    GaussConfigs g;
    g.dims_out = split.ports[0].out_dim;
    g.is_complex = !ch.maps[0].is_real || !ch.maps[1].is_real;
    for (const auto& p : split.ports)
        for (const Cplx& v : p.values)
            if (std::fabs(v.imag()) > 0) g.is_complex = true;
    g.a_count = en.a_count;
    g.b_count = en.b_count;

    const auto& p0 = split.ports[0];
    const auto& p1 = split.ports[1];
    auto s0 = p0.layer_sizes();
    auto s1 = p1.layer_sizes();
    int total = flat_size(en.sizes);
    std::vector<int> digits;
    double a0 = ch.amplitude(q.receiver, 0), a1 = ch.amplitude(q.receiver, 1);
    for (int f = 0; f < total; ++f) {
        unflatten(f, en.sizes, digits);
        double pr = 1.0;
        for (size_t l = 0; l < digits.size(); ++l)
            pr *= split.layer_pmf(static_cast<int>(l))[digits[l]];
        if (pr <= 0.0) continue;
        std::vector<int> d0(digits.begin(), digits.begin() + s0.size());
        std::vector<int> d1(digits.begin() + s0.size(), digits.end());
        int f0 = flatten(d0, s0);
        int f1 = flatten(d1, s1);
        g.prob.push_back(pr);
        g.a_idx.push_back(en.a_index(digits));
        g.b_idx.push_back(en.b_index(digits));
        for (int d = 0; d < g.dims_out; ++d)
            g.mean.push_back(a0 * p0.values[f0 * g.dims_out + d] +
                             a1 * p1.values[f1 * g.dims_out + d]);
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------

double mutual_info(const DiscreteChannel& ch, const LayerSplit& split,
                   const MiQuery& q) {
    if (q.receiver < 0 || q.receiver >= ch.receivers())
        throw SwscError("mi query: invalid receiver");
    if (split.ports.size() != ch.input_pmfs.size())
        throw SwscError("split does not match channel port count");
    LayerEnum en(split, q);

    const auto marg = ch.law.receiver_marginal(q.receiver);
    const int ny = ch.law.output_sizes[q.receiver];
    const int A = en.a_count, B = en.b_count;
    std::vector<double> joint(static_cast<size_t>(A) * B * ny, 0.0);

    // Per-layer lookup tables so the odometer below stays allocation-free.
    const int n_layers = static_cast<int>(en.sizes.size());
    std::vector<const double*> pmf(n_layers);
    std::vector<int> a_mul(n_layers, 0), b_mul(n_layers, 0), port_mul(n_layers, 0);
    std::vector<int> port_of(n_layers);
    for (int l = 0; l < n_layers; ++l) {
        pmf[l] = split.layer_pmf(l).data();
        port_of[l] = split.port_of_layer(l);
    }
    for (int i = static_cast<int>(en.target_layers.size()) - 1, m = 1; i >= 0; --i) {
        a_mul[en.target_layers[i]] = m;
        m *= en.sizes[en.target_layers[i]];
    }
    for (int i = static_cast<int>(en.cond_layers.size()) - 1, m = 1; i >= 0; --i) {
        b_mul[en.cond_layers[i]] = m;
        m *= en.sizes[en.cond_layers[i]];
    }
    for (int p = 0, l0 = 0; p < ch.ports(); ++p) {
        int nl = split.ports[p].layers();
        for (int i = nl - 1, m = 1; i >= 0; --i) {
            port_mul[l0 + i] = m;
            m *= en.sizes[l0 + i];
        }
        l0 += nl;
    }
    std::vector<int> in_mul(ch.ports());
    for (int p = ch.ports() - 1, m = 1; p >= 0; --p) {
        in_mul[p] = m;
        m *= ch.law.input_sizes[p];
    }

    std::vector<int> digits(n_layers, 0), port_flat(ch.ports(), 0);
    bool done = n_layers == 0;
    while (!done) {
        double pr = 1.0;
        for (int l = 0; l < n_layers; ++l) pr *= pmf[l][digits[l]];
        if (pr > 0.0) {
            std::fill(port_flat.begin(), port_flat.end(), 0);
            int a_idx = 0, b_idx = 0;
            for (int l = 0; l < n_layers; ++l) {
                port_flat[port_of[l]] += digits[l] * port_mul[l];
                a_idx += digits[l] * a_mul[l];
                b_idx += digits[l] * b_mul[l];
            }
            int in_flat = 0;
            for (int p = 0; p < ch.ports(); ++p)
                in_flat += split.ports[p].table[port_flat[p]] * in_mul[p];
            const double* row = &marg[static_cast<size_t>(in_flat) * ny];
            double* dst = &joint[(static_cast<size_t>(b_idx) * A + a_idx) * ny];
            for (int y = 0; y < ny; ++y) dst[y] += pr * row[y];
        }
        int l = n_layers - 1;
        while (l >= 0 && ++digits[l] == en.sizes[l]) digits[l--] = 0;
        done = l < 0;
    }

    // I(A;Y|B) = sum j(a,b,y) log2[ j(a,b,y) p(b) / (p(a,b) p(b,y)) ]
    std::vector<double> p_ab(static_cast<size_t>(A) * B, 0.0);
    std::vector<double> p_by(static_cast<size_t>(B) * ny, 0.0);
    std::vector<double> p_b(B, 0.0);
    for (int b = 0; b < B; ++b)
        for (int a = 0; a < A; ++a) {
            const double* row = &joint[(static_cast<size_t>(b) * A + a) * ny];
            for (int y = 0; y < ny; ++y) {
                p_ab[static_cast<size_t>(b) * A + a] += row[y];
                p_by[static_cast<size_t>(b) * ny + y] += row[y];
                p_b[b] += row[y];
            }
        }
    double bits = 0.0;
    for (int b = 0; b < B; ++b)
        for (int a = 0; a < A; ++a) {
            double pab = p_ab[static_cast<size_t>(b) * A + a];
            if (pab <= 0.0) continue;
            const double* row = &joint[(static_cast<size_t>(b) * A + a) * ny];
            for (int y = 0; y < ny; ++y) {
                double j = row[y];
                if (j <= 0.0) continue;
                double pby = p_by[static_cast<size_t>(b) * ny + y];
                bits += j * std::log2(j * p_b[b] / (pab * pby));
            }
        }
    return bits;
}

// ---------------------------------------------------------------------------

double mutual_info(const GaussianChannel& ch, const LayerSplit& split,
                   const MiQuery& q) {
    if (q.receiver < 0 || q.receiver > 1)
        throw SwscError("mi query: invalid receiver");
    GaussConfigs g = enumerate_gauss(ch, split, q);
    if (g.dims_out != 1)
        throw SwscError(
            "quadrature unsupported for signal dimensionality > 2; use mc_mutual_info");

    const int dims = g.is_complex ? 2 : 1;
    const double inv_two_var = dims == 2 ? 1.0 : 0.5;  // 1/(2 sigma_dim^2)
    const int n_cfg = static_cast<int>(g.prob.size());

    // Group configs by conditioning cell and by (cond, target) cell.
    std::vector<std::vector<int>> by_b(g.b_count);
    std::vector<std::vector<int>> by_ab(static_cast<size_t>(g.b_count) * g.a_count);
    for (int c = 0; c < n_cfg; ++c) {
        by_b[g.b_idx[c]].push_back(c);
        by_ab[static_cast<size_t>(g.b_idx[c]) * g.a_count + g.a_idx[c]].push_back(c);
    }

    const auto& gh = gauss_hermite(ch.quad_nodes);
    const int nn = static_cast<int>(gh.nodes.size());
    const double sigma_dim = dims == 2 ? std::sqrt(0.5) : 1.0;
    const double step = std::sqrt(2.0) * sigma_dim;

    auto log_mix = [&](const std::vector<int>& group, const Cplx& y) {
        double mx = -1e300;
        for (int c : group) {
            double d2 = std::norm(y - g.mean[c]);
            double e = std::log(g.prob[c]) - d2 * inv_two_var;
            if (e > mx) mx = e;
        }
        double s = 0.0;
        for (int c : group) {
            double d2 = std::norm(y - g.mean[c]);
            s += std::exp(std::log(g.prob[c]) - d2 * inv_two_var - mx);
        }
        return mx + std::log(s);
    };

    double bits = 0.0;
    for (int c = 0; c < n_cfg; ++c) {
        const auto& grp_ab = by_ab[static_cast<size_t>(g.b_idx[c]) * g.a_count + g.a_idx[c]];
        const auto& grp_b = by_b[g.b_idx[c]];
        double p_ab = 0.0, p_b = 0.0;
        for (int o : grp_ab) p_ab += g.prob[o];
        for (int o : grp_b) p_b += g.prob[o];
        double log_norm = std::log(p_b / p_ab);
        if (dims == 1) {
            for (int i = 0; i < nn; ++i) {
                Cplx y = g.mean[c] + step * gh.nodes[i];
                double l = log_mix(grp_ab, y) - log_mix(grp_b, y) + log_norm;
                bits += g.prob[c] * gh.weights[i] * kInvSqrtPi * l * kLog2e;
            }
        } else {
            for (int i = 0; i < nn; ++i)
                for (int j = 0; j < nn; ++j) {
                    Cplx y = g.mean[c] + Cplx(step * gh.nodes[i], step * gh.nodes[j]);
                    double l = log_mix(grp_ab, y) - log_mix(grp_b, y) + log_norm;
                    bits += g.prob[c] * gh.weights[i] * gh.weights[j] * kInvSqrtPi *
                            kInvSqrtPi * l * kLog2e;
                }
        }
    }
    return bits;
}

// ---------------------------------------------------------------------------

McEstimate mc_mutual_info(const GaussianChannel& ch, const LayerSplit& split,
                          const MiQuery& q, long samples, uint64_t seed) {
    GaussConfigs g = enumerate_gauss(ch, split, q);
    const int dims_per = g.is_complex ? 2 : 1;
    const double inv_two_var = dims_per == 2 ? 1.0 : 0.5;
    const double sigma_dim = dims_per == 2 ? std::sqrt(0.5) : 1.0;
    const int n_cfg = static_cast<int>(g.prob.size());

    std::vector<std::vector<int>> by_b(g.b_count);
    std::vector<std::vector<int>> by_ab(static_cast<size_t>(g.b_count) * g.a_count);
    std::vector<double> p_ab_tot(by_ab.size(), 0.0), p_b_tot(g.b_count, 0.0);
    for (int c = 0; c < n_cfg; ++c) {
        by_b[g.b_idx[c]].push_back(c);
        by_ab[static_cast<size_t>(g.b_idx[c]) * g.a_count + g.a_idx[c]].push_back(c);
        p_ab_tot[static_cast<size_t>(g.b_idx[c]) * g.a_count + g.a_idx[c]] += g.prob[c];
        p_b_tot[g.b_idx[c]] += g.prob[c];
    }
    std::vector<double> cum(n_cfg);
    double acc = 0.0;
    for (int c = 0; c < n_cfg; ++c) {
        acc += g.prob[c];
        cum[c] = acc;
    }

    Rng rng(seed);
    std::vector<Cplx> y(g.dims_out);
    auto log_mix = [&](const std::vector<int>& group) {
        double mx = -1e300;
        std::vector<double> es;
        es.reserve(group.size());
        for (int c : group) {
            double d2 = 0.0;
            for (int d = 0; d < g.dims_out; ++d)
                d2 += std::norm(y[d] - g.mean[static_cast<size_t>(c) * g.dims_out + d]);
            double e = std::log(g.prob[c]) - d2 * inv_two_var;
            es.push_back(e);
            if (e > mx) mx = e;
        }
        double s = 0.0;
        for (double e : es) s += std::exp(e - mx);
        return mx + std::log(s);
    };

    double sum = 0.0, sum2 = 0.0;
    for (long it = 0; it < samples; ++it) {
        double u = rng.next_double() * acc;
        int c = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (c >= n_cfg) c = n_cfg - 1;
        for (int d = 0; d < g.dims_out; ++d) {
            double re = g.mean[static_cast<size_t>(c) * g.dims_out + d].real() +
                        sigma_dim * rng.next_gaussian();
            double im = g.mean[static_cast<size_t>(c) * g.dims_out + d].imag();
            if (dims_per == 2) im += sigma_dim * rng.next_gaussian();
            y[d] = Cplx(re, im);
        }
        size_t ab = static_cast<size_t>(g.b_idx[c]) * g.a_count + g.a_idx[c];
        double l = (log_mix(by_ab[ab]) - std::log(p_ab_tot[ab])) -
                   (log_mix(by_b[g.b_idx[c]]) - std::log(p_b_tot[g.b_idx[c]]));
        double v = l * kLog2e;
        sum += v;
        sum2 += v * v;
    }
    McEstimate est;
    est.bits = sum / samples;
    double var = std::max(0.0, sum2 / samples - est.bits * est.bits);
    est.std_error = std::sqrt(var / samples);
    return est;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Ch>
double chain_residual_impl(const Ch& ch, const LayerSplit& split,
                           const std::vector<int>& order, int receiver) {
    if (order.empty()) throw SwscError("chain rule check: empty order");
    int port = split.port_of_layer(order[0]);
    uint32_t want = split.port_mask(port);
    uint32_t seen = 0;
    double sum = 0.0;
    for (int l : order) {
        if (split.port_of_layer(l) != port)
            throw SwscError("chain rule check: order must cover one sender");
        MiQuery q{1u << l, seen, receiver};
        sum += mutual_info(ch, split, q);
        seen |= 1u << l;
    }
    if (seen != want) throw SwscError("chain rule check: order must cover all layers");
    MiQuery full{want, 0, receiver};
    return std::fabs(sum - mutual_info(ch, split, full));
}

}  // namespace

double chain_rule_residual(const DiscreteChannel& ch, const LayerSplit& split,
                           const std::vector<int>& order, int receiver) {
    return chain_residual_impl(ch, split, order, receiver);
}

double chain_rule_residual(const GaussianChannel& ch, const LayerSplit& split,
                           const std::vector<int>& order, int receiver) {
    return chain_residual_impl(ch, split, order, receiver);
}

}  // namespace swsc
