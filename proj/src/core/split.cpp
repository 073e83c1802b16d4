#include "split.hpp"

#include <cmath>

#include "json.hpp"

namespace swsc {

std::vector<int> PortSplit::layer_sizes() const {
    std::vector<int> s;
    s.reserve(layer_pmfs.size());
    for (const auto& p : layer_pmfs) s.push_back(static_cast<int>(p.size()));
    return s;
}

int PortSplit::flat() const { return flat_size(layer_sizes()); }

Pmf PortSplit::pushforward() const {
    Pmf out(target.empty() ? 0 : target.size(), 0.0);
    if (out.empty() && !table.empty()) {
        int m = 0;
        for (int t : table) m = std::max(m, t + 1);
        out.assign(m, 0.0);
    }
    auto sizes = layer_sizes();
    std::vector<int> digits;
    for (int f = 0; f < flat(); ++f) {
        unflatten(f, sizes, digits);
        double p = 1.0;
        for (size_t l = 0; l < digits.size(); ++l) p *= layer_pmfs[l][digits[l]];
        out[table[f]] += p;
    }
    return out;
}

void PortSplit::validate() const {
    for (const auto& p : layer_pmfs)
        if (!is_valid_pmf(p, tol().discrete))
            throw ConfigError("layer pmf invalid");
    int n = flat();
    if (is_constellation()) {
        if (static_cast<int>(values.size()) != n * out_dim)
            throw ConfigError("constellation table has wrong size");
        return;
    }
    if (static_cast<int>(table.size()) != n)
        throw ConfigError("map table has wrong size");
    if (!target.empty()) {
        Pmf induced = pushforward();
        if (induced.size() != target.size())
            throw ConfigError("map range does not match target alphabet");
        for (size_t i = 0; i < target.size(); ++i)
            if (std::fabs(induced[i] - target[i]) > tol().pushforward)
                throw ConfigError("split does not reproduce the target marginal");
    }
}

int LayerSplit::total_layers() const {
    int n = 0;
    for (const auto& p : ports) n += p.layers();
    return n;
}

int LayerSplit::layer_offset(int port) const {
    int off = 0;
    for (int p = 0; p < port; ++p) off += ports[p].layers();
    return off;
}

int LayerSplit::port_of_layer(int global) const {
    for (size_t p = 0; p < ports.size(); ++p) {
        int n = ports[p].layers();
        if (global < n) return static_cast<int>(p);
        global -= n;
    }
    throw SwscError("layer index out of range");
}

int LayerSplit::layer_size(int global) const {
    return static_cast<int>(layer_pmf(global).size());
}

const Pmf& LayerSplit::layer_pmf(int global) const {
    for (const auto& p : ports) {
        if (global < p.layers()) return p.layer_pmfs[global];
        global -= p.layers();
    }
    throw SwscError("layer index out of range");
}

uint32_t LayerSplit::port_mask(int port) const {
    int off = layer_offset(port);
    int n = ports[port].layers();
    return ((n >= 32 ? 0u : (1u << n)) - 1u) << off;
}

uint32_t LayerSplit::all_mask() const {
    int n = total_layers();
    return n >= 32 ? ~0u : (1u << n) - 1u;
}

void LayerSplit::validate() const {
    for (const auto& p : ports) p.validate();
    if (total_layers() > 30) throw ConfigError("too many layers");
}

// ---------------------------------------------------------------------------

static PortSplit identity_port(const Pmf& p) {
    PortSplit s;
    s.layer_pmfs = {p};
    s.table.resize(p.size());
    for (size_t i = 0; i < p.size(); ++i) s.table[i] = static_cast<int>(i);
    s.target = p;
    return s;
}

LayerSplit trivial_split(const DiscreteChannel& ch) {
    LayerSplit split;
    for (const auto& p : ch.input_pmfs) split.ports.push_back(identity_port(p));
    return split;
}

PortSplit port_from_map(const SymbolMap& map) {
    PortSplit s;
    for (int sz : map.layer_sizes)
        s.layer_pmfs.emplace_back(sz, 1.0 / sz);
    s.values = map.values;
    s.out_dim = map.out_dim;
    return s;
}

LayerSplit trivial_split(const GaussianChannel& ch) {
    LayerSplit split;
    split.ports.push_back(port_from_map(ch.maps[0]));
    split.ports.push_back(port_from_map(ch.maps[1]));
    return split;
}

PortSplit erasure_port_split(const Pmf& p_x, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("erasure probability outside [0,1]");
    const int m = static_cast<int>(p_x.size());
    PortSplit s;
    Pmf p1(m + 1);
    for (int i = 0; i < m; ++i) p1[i] = (1.0 - alpha) * p_x[i];
    p1[m] = alpha;
    s.layer_pmfs = {p1, p_x};
    s.table.resize(static_cast<size_t>(m + 1) * m);
    for (int x1 = 0; x1 <= m; ++x1)
        for (int x2 = 0; x2 < m; ++x2)
            s.table[x1 * m + x2] = (x1 < m) ? x1 : x2;
    s.target = p_x;
    return s;
}

ThreeLayerSplit compose_three_layer(const Pmf& p_x, double alpha_prime,
                                    double alpha_dblprime) {
    if (alpha_prime < 0.0 || alpha_prime > 1.0 || alpha_dblprime < 0.0 ||
        alpha_dblprime > 1.0)
        throw ConfigError("erasure probability outside [0,1]");
    ThreeLayerSplit out;
    out.alpha_prime_coarser = alpha_prime > alpha_dblprime;
    out.alpha_coarse = std::max(alpha_prime, alpha_dblprime);
    out.alpha_fine = std::min(alpha_prime, alpha_dblprime);
    const double ac = out.alpha_coarse;
    const double af = out.alpha_fine;
    const int m = static_cast<int>(p_x.size());

    PortSplit& s = out.port;
    Pmf p1(m + 1);
    for (int i = 0; i < m; ++i) p1[i] = (1.0 - ac) * p_x[i];
    p1[m] = ac;
    // Refinement layer: given x1 erased, x2 reveals x with conditional
    // probability (ac - af)/ac and stays erased with probability af/ac, so
    // the pair (x1, x2) is exactly the fine erasure split.
    Pmf p2(m + 1);
    if (ac > 0.0) {
        for (int i = 0; i < m; ++i) p2[i] = ((ac - af) / ac) * p_x[i];
        p2[m] = af / ac;
    } else {
        for (int i = 0; i < m; ++i) p2[i] = 0.0;
        p2[m] = 1.0;
    }
    s.layer_pmfs = {p1, p2, p_x};
    s.table.resize(static_cast<size_t>(m + 1) * (m + 1) * m);
    for (int x1 = 0; x1 <= m; ++x1)
        for (int x2 = 0; x2 <= m; ++x2)
            for (int x3 = 0; x3 < m; ++x3) {
                int v = (x1 < m) ? x1 : (x2 < m ? x2 : x3);
                s.table[(x1 * (m + 1) + x2) * m + x3] = v;
            }
    s.target = p_x;
    return out;
}

LayerSplit mac3_split(const Pmf& p_a, const Pmf& p_b, const Pmf& p_c,
                      double alpha, double beta) {
    LayerSplit split;
    split.ports.push_back(erasure_port_split(p_a, alpha));
    split.ports.push_back(erasure_port_split(p_b, beta));
    split.ports.push_back(identity_port(p_c));
    return split;
}

PortSplit to_constellation(const PortSplit& split, const std::vector<Cplx>& points) {
    PortSplit out;
    out.layer_pmfs = split.layer_pmfs;
    out.out_dim = 1;
    out.values.resize(split.table.size());
    for (size_t i = 0; i < split.table.size(); ++i)
        out.values[i] = points.at(split.table[i]);
    return out;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

std::string split_to_json(const LayerSplit& split) {
    json ports = json::array();
    for (const auto& p : split.ports) {
        json jp;
        json layers = json::array();
        for (const auto& pmf : p.layer_pmfs) layers.push_back(json{{"pmf", pmf}});
        jp["layers"] = layers;
        if (p.is_constellation()) {
            json vals = json::array();
            for (const Cplx& v : p.values) vals.push_back({v.real(), v.imag()});
            jp["map"] = vals;
            jp["complex"] = true;
            jp["out_dim"] = p.out_dim;
        } else {
            jp["map"] = p.table;
            jp["target"] = p.target;
        }
        ports.push_back(jp);
    }
    return json{{"ports", ports}}.dump();
}

LayerSplit split_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("split JSON parse error: ") + e.what());
    }
    LayerSplit split;
    for (const auto& jp : j.at("ports")) {
        PortSplit p;
        for (const auto& jl : jp.at("layers")) p.layer_pmfs.push_back(jl.at("pmf").get<Pmf>());
        if (jp.value("complex", false)) {
            p.out_dim = jp.value("out_dim", 1);
            for (const auto& v : jp.at("map"))
                p.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        } else {
            p.table = jp.at("map").get<std::vector<int>>();
            if (jp.contains("target")) p.target = jp["target"].get<Pmf>();
        }
        p.validate();
        split.ports.push_back(std::move(p));
    }
    return split;
}

}  // namespace swsc
