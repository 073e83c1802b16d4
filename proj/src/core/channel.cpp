#include "channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace swsc {

bool is_valid_pmf(const Pmf& p, double tolerance) {
    double s = 0.0;
    for (double v : p) {
        if (v < 0.0) return false;
        s += v;
    }
    return std::fabs(s - 1.0) <= tolerance;
}

int flat_size(const std::vector<int>& sizes) {
    int n = 1;
    for (int s : sizes) n *= s;
    return n;
}

int flatten(const std::vector<int>& digits, const std::vector<int>& sizes) {
    int f = 0;
    for (size_t i = 0; i < sizes.size(); ++i) f = f * sizes[i] + digits[i];
    return f;
}

void unflatten(int flat, const std::vector<int>& sizes, std::vector<int>& digits) {
    digits.resize(sizes.size());
    for (size_t i = sizes.size(); i-- > 0;) {
        digits[i] = flat % sizes[i];
        flat /= sizes[i];
    }
}

// ---------------------------------------------------------------------------

void DiscreteLaw::validate(double tolerance) const {
    const int fi = flat_inputs();
    const int fo = flat_outputs();
    if (static_cast<int>(law.size()) != fi * fo)
        throw ConfigError("channel law has wrong size");
    for (int i = 0; i < fi; ++i) {
        double s = 0.0;
        for (int o = 0; o < fo; ++o) {
            double v = law[i * fo + o];
            if (v < 0.0) throw ConfigError("channel law has negative entry");
            s += v;
        }
        if (std::fabs(s - 1.0) > tolerance)
            throw ConfigError("channel law slice does not sum to 1");
    }
}

std::vector<double> DiscreteLaw::receiver_marginal(int receiver) const {
    const int fi = flat_inputs();
    const int fo = flat_outputs();
    const int ny = output_sizes[receiver];
    std::vector<double> m(static_cast<size_t>(fi) * ny, 0.0);
    std::vector<int> out_digits;
    for (int o = 0; o < fo; ++o) {
        unflatten(o, output_sizes, out_digits);
        int y = out_digits[receiver];
        for (int i = 0; i < fi; ++i) m[i * ny + y] += law[i * fo + o];
    }
    return m;
}

void DiscreteChannel::validate() const {
    law.validate(tol().discrete);
    if (input_pmfs.size() != law.input_sizes.size())
        throw ConfigError("input pmf count does not match port count");
    for (size_t p = 0; p < input_pmfs.size(); ++p) {
        if (static_cast<int>(input_pmfs[p].size()) != law.input_sizes[p] ||
            !is_valid_pmf(input_pmfs[p], tol().discrete))
            throw ConfigError("invalid input pmf");
    }
}

DiscreteChannel make_discrete_ic(int x_size, int w_size, int y1_size, int y2_size,
                                 const std::vector<double>& joint_law,
                                 const Pmf& px, const Pmf& pw) {
    DiscreteChannel ch;
    ch.law.input_sizes = {x_size, w_size};
    ch.law.output_sizes = {y1_size, y2_size};
    ch.law.law = joint_law;
    ch.input_pmfs = {px, pw};
    ch.validate();
    return ch;
}

static Pmf random_pmf(Rng& rng, int n) {
    Pmf p(n);
    double s = 0.0;
    for (double& v : p) {
        v = 0.05 + rng.next_double();
        s += v;
    }
    for (double& v : p) v /= s;
    // Renormalize exactly so the validator's 1e-12 budget is not squandered.
    double s2 = 0.0;
    for (size_t i = 0; i + 1 < p.size(); ++i) s2 += p[i];
    p.back() = 1.0 - s2;
    return p;
}

DiscreteChannel random_discrete_ic(Rng& rng, int max_alphabet) {
    auto size = [&](int lo) {
        return lo + static_cast<int>(rng.next_below(max_alphabet - lo + 1));
    };
    int nx = size(2), nw = size(2), ny1 = size(2), ny2 = size(2);
    DiscreteChannel ch;
    ch.law.input_sizes = {nx, nw};
    ch.law.output_sizes = {ny1, ny2};
    int fi = nx * nw, fo = ny1 * ny2;
    ch.law.law.resize(static_cast<size_t>(fi) * fo);
    for (int i = 0; i < fi; ++i) {
        Pmf row = random_pmf(rng, fo);
        for (int o = 0; o < fo; ++o) ch.law.law[i * fo + o] = row[o];
    }
    ch.input_pmfs = {random_pmf(rng, nx), random_pmf(rng, nw)};
    ch.validate();
    return ch;
}

DiscreteChannel random_mac3(Rng& rng, int a_size, int b_size, int c_size, int y_size) {
    DiscreteChannel ch;
    ch.law.input_sizes = {a_size, b_size, c_size};
    ch.law.output_sizes = {y_size};
    int fi = a_size * b_size * c_size;
    ch.law.law.resize(static_cast<size_t>(fi) * y_size);
    for (int i = 0; i < fi; ++i) {
        Pmf row = random_pmf(rng, y_size);
        for (int o = 0; o < y_size; ++o) ch.law.law[i * y_size + o] = row[o];
    }
    ch.input_pmfs = {random_pmf(rng, a_size), random_pmf(rng, b_size),
                     random_pmf(rng, c_size)};
    ch.validate();
    return ch;
}

// ---------------------------------------------------------------------------

// Average power per output dimension, so antenna stackings of unit-power
// constellations stay unit power.
double SymbolMap::average_power() const {
    double s = 0.0;
    for (const Cplx& v : values) s += std::norm(v);
    return s / (static_cast<double>(flat()) * out_dim);
}

namespace {

double bpsk_val(int idx) { return idx == 0 ? 1.0 : -1.0; }

// Unit-power 4PAM levels in natural order: +3, +1, -1, -3 over sqrt(5).
double pam4_val(int idx) {
    static const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
    return (3 - 2 * idx) * inv_sqrt5;
}

Cplx qpsk_val(int idx) {
    static const double h = std::sqrt(0.5);
    static const Cplx pts[4] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
    return pts[idx];
}

template <typename F>
SymbolMap build_map(std::vector<int> sizes, int out_dim, bool is_real, F&& fn,
                    std::string name) {
    SymbolMap m;
    m.layer_sizes = std::move(sizes);
    m.out_dim = out_dim;
    m.is_real = is_real;
    m.name = std::move(name);
    int n = m.flat();
    m.values.resize(static_cast<size_t>(n) * out_dim);
    std::vector<int> digits;
    for (int f = 0; f < n; ++f) {
        unflatten(f, m.layer_sizes, digits);
        fn(digits, &m.values[static_cast<size_t>(f) * out_dim]);
    }
    double p = m.average_power();
    if (std::fabs(p - 1.0) > tol().unit_power)
        throw SwscError("symbol map '" + m.name + "' is not unit power");
    return m;
}

}  // namespace

SymbolMap make_bpsk() {
    return build_map({2}, 1, true,
                     [](const std::vector<int>& d, Cplx* out) { out[0] = bpsk_val(d[0]); },
                     "bpsk");
}

SymbolMap make_4pam_natural() {
    const double s = 1.0 / std::sqrt(5.0);
    return build_map({2, 2}, 1, true,
                     [s](const std::vector<int>& d, Cplx* out) {
                         out[0] = s * (bpsk_val(d[0]) + 2.0 * bpsk_val(d[1]));
                     },
                     "4pam_natural");
}

SymbolMap make_4pam_gray() {
    const double s = 1.0 / std::sqrt(5.0);
    return build_map({2, 2}, 1, true,
                     [s](const std::vector<int>& d, Cplx* out) {
                         double x1 = bpsk_val(d[0]);
                         out[0] = s * (x1 + 2.0 * x1 * bpsk_val(d[1]));
                     },
                     "4pam_gray");
}

SymbolMap make_higher_map(HigherMapKind kind) {
    switch (kind) {
        case HigherMapKind::Pam8From3Bpsk: {
            const double s = 1.0 / std::sqrt(21.0);
            return build_map({2, 2, 2}, 1, true,
                             [s](const std::vector<int>& d, Cplx* out) {
                                 out[0] = s * (bpsk_val(d[0]) + 2.0 * bpsk_val(d[1]) +
                                               4.0 * bpsk_val(d[2]));
                             },
                             "8pam_3bpsk");
        }
        case HigherMapKind::Pam8FromBpskPam4: {
            const double s = 1.0 / std::sqrt(21.0);
            const double a = 2.0 * std::sqrt(5.0);
            return build_map({2, 4}, 1, true,
                             [s, a](const std::vector<int>& d, Cplx* out) {
                                 out[0] = s * (bpsk_val(d[0]) + a * pam4_val(d[1]));
                             },
                             "8pam_bpsk_4pam");
        }
        case HigherMapKind::Qam16From2Qpsk: {
            const double s = 1.0 / std::sqrt(5.0);
            return build_map({4, 4}, 1, false,
                             [s](const std::vector<int>& d, Cplx* out) {
                                 out[0] = s * (qpsk_val(d[0]) + 2.0 * qpsk_val(d[1]));
                             },
                             "16qam_2qpsk");
        }
        case HigherMapKind::Qam16From2Pam4: {
            const double s = 1.0 / std::sqrt(2.0);
            return build_map({4, 4}, 1, false,
                             [s](const std::vector<int>& d, Cplx* out) {
                                 out[0] = s * Cplx(pam4_val(d[0]), pam4_val(d[1]));
                             },
                             "16qam_2x4pam");
        }
        case HigherMapKind::MimoAntenna: {
            // Identity stacking of two 4PAM antenna ports; layer k feeds
            // antenna k directly.
            return build_map({4, 4}, 2, true,
                             [](const std::vector<int>& d, Cplx* out) {
                                 out[0] = pam4_val(d[0]);
                                 out[1] = pam4_val(d[1]);
                             },
                             "mimo_antenna");
        }
    }
    throw ConfigError("unknown symbol map kind");
}

SymbolMap symbol_map_by_name(const std::string& name) {
    if (name == "bpsk") return make_bpsk();
    if (name == "4pam_natural") return make_4pam_natural();
    if (name == "4pam_gray") return make_4pam_gray();
    if (name == "8pam_3bpsk") return make_higher_map(HigherMapKind::Pam8From3Bpsk);
    if (name == "8pam_bpsk_4pam") return make_higher_map(HigherMapKind::Pam8FromBpskPam4);
    if (name == "16qam_2qpsk") return make_higher_map(HigherMapKind::Qam16From2Qpsk);
    if (name == "16qam_2x4pam") return make_higher_map(HigherMapKind::Qam16From2Pam4);
    if (name == "mimo_antenna") return make_higher_map(HigherMapKind::MimoAntenna);
    throw ConfigError("unknown symbol map: " + name);
}

GaussianChannel make_symmetric_gaussian(double snr_db, double inr_db,
                                        const std::string& map1,
                                        const std::string& map2) {
    GaussianChannel ch;
    ch.power = 1.0;
    double gs = std::sqrt(db_to_linear(snr_db));
    double gi = std::sqrt(db_to_linear(inr_db));
    ch.g[0][0] = gs;
    ch.g[1][1] = gs;
    ch.g[0][1] = gi;
    ch.g[1][0] = gi;
    ch.maps[0] = symbol_map_by_name(map1);
    ch.maps[1] = symbol_map_by_name(map2);
    return ch;
}

QuadratureModel discretize_gaussian(const GaussianChannel& ch, int quad_nodes) {
    if (quad_nodes < 16) throw ConfigError("quad_nodes must be >= 16");
    if (ch.maps[0].out_dim != 1 || ch.maps[1].out_dim != 1)
        throw ConfigError("quadrature unsupported for signal dimensionality > 2");
    QuadratureModel qm;
    qm.nodes = quad_nodes;
    qm.signal_dims = ch.complex_signal() ? 2 : 1;
    qm.sigma_per_dim = qm.signal_dims == 2 ? std::sqrt(0.5) : 1.0;
    qm.port_flat_sizes = {ch.maps[0].flat(), ch.maps[1].flat()};
    qm.mean.assign(2, {});
    for (int r = 0; r < 2; ++r) {
        qm.mean[r].resize(static_cast<size_t>(qm.port_flat_sizes[0]) *
                          qm.port_flat_sizes[1]);
        for (int i = 0; i < qm.port_flat_sizes[0]; ++i)
            for (int j = 0; j < qm.port_flat_sizes[1]; ++j)
                qm.mean[r][i * qm.port_flat_sizes[1] + j] =
                    ch.amplitude(r, 0) * ch.maps[0].values[i] +
                    ch.amplitude(r, 1) * ch.maps[1].values[j];
    }
    gauss_hermite(quad_nodes);  // warm the cache
    return qm;
}

GaussianChannel gaussian_substituted(const GaussianChannel& ch, int receiver) {
    // Interference power a^2 * E|symbol|^2 = a^2 (unit-power maps); fold it
    // into the noise and rescale so the noise is unit variance again.
    double a_own = ch.amplitude(receiver, receiver);
    double a_int = ch.amplitude(receiver, 1 - receiver);
    double noise_scale = std::sqrt(1.0 + a_int * a_int);
    GaussianChannel out;
    out.power = 1.0;
    out.g[0][0] = a_own / noise_scale;
    out.g[1][1] = a_own / noise_scale;
    out.g[0][1] = 0.0;
    out.g[1][0] = 0.0;
    out.maps[0] = ch.maps[receiver];
    out.maps[1] = ch.maps[receiver];  // inert (zero gain)
    out.quad_nodes = ch.quad_nodes;
    return out;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

static ChannelConfig parse_channel(const json& j) {
    ChannelConfig cfg;
    std::string type = j.at("type").get<std::string>();
    if (type == "discrete") {
        cfg.is_gaussian = false;
        DiscreteChannel& ch = cfg.discrete;
        int nx = j.at("x_size").get<int>();
        int nw = j.at("w_size").get<int>();
        int ny1 = j.at("y1_size").get<int>();
        int ny2 = j.at("y2_size").get<int>();
        ch.law.input_sizes = {nx, nw};
        ch.law.output_sizes = {ny1, ny2};
        ch.law.law = j.at("law").get<std::vector<double>>();
        ch.input_pmfs = {j.at("px").get<Pmf>(), j.at("pw").get<Pmf>()};
        ch.validate();
    } else if (type == "gaussian") {
        cfg.is_gaussian = true;
        GaussianChannel& ch = cfg.gaussian;
        ch.power = j.contains("power_db") ? db_to_linear(j["power_db"].get<double>()) : 1.0;
        if (j.contains("gains")) {
            const json& g = j["gains"];
            ch.g[0][0] = g.at("g11").get<double>();
            ch.g[0][1] = g.at("g12").get<double>();
            ch.g[1][0] = g.at("g21").get<double>();
            ch.g[1][1] = g.at("g22").get<double>();
        } else {
            // g = sqrt(10^(dB/10) / P)
            double snr = j.at("snr_db").get<double>();
            double inr = j.at("inr_db").get<double>();
            double gs = std::sqrt(db_to_linear(snr) / ch.power);
            double gi = std::sqrt(db_to_linear(inr) / ch.power);
            ch.g[0][0] = gs;
            ch.g[1][1] = gs;
            ch.g[0][1] = gi;
            ch.g[1][0] = gi;
        }
        ch.maps[0] = symbol_map_by_name(j.value("map1", std::string("4pam_natural")));
        ch.maps[1] = symbol_map_by_name(j.value("map2", std::string("bpsk")));
        if (j.contains("quad_nodes")) ch.quad_nodes = j["quad_nodes"].get<int>();
    } else {
        throw ConfigError("unknown channel type: " + type);
    }
    return cfg;
}

ChannelConfig load_channel_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("channel JSON parse error: ") + e.what());
    }
    try {
        return parse_channel(j);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("channel JSON invalid: ") + e.what());
    }
}

ChannelConfig load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open channel config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_channel_json(ss.str());
}

}  // namespace swsc
