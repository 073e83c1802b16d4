#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "util.hpp"

namespace swsc {

using Pmf = std::vector<double>;
using Cplx = std::complex<double>;

bool is_valid_pmf(const Pmf& p, double tolerance);

// Mixed-radix helpers shared by the channel/split/mi code.
int flat_size(const std::vector<int>& sizes);
int flatten(const std::vector<int>& digits, const std::vector<int>& sizes);
void unflatten(int flat, const std::vector<int>& sizes, std::vector<int>& digits);

// ---------------------------------------------------------------------------
// Generic finite-alphabet memoryless channel with one or more input ports and
// one or more receivers. A two-user interference channel has ports (x, w) and
// receivers (y1, y2); a three-user MAC has three ports and one receiver; the
// four-sender view used for common/private message splitting has four ports
// and two receivers.
struct DiscreteLaw {
    std::vector<int> input_sizes;
    std::vector<int> output_sizes;
    // law[flat_inputs * flat_out_total + flat_outputs] = p(all outputs | inputs)
    std::vector<double> law;

    int flat_inputs() const { return flat_size(input_sizes); }
    int flat_outputs() const { return flat_size(output_sizes); }
    // Throws if any conditional slice is off by more than `tolerance`.
    void validate(double tolerance) const;
    // p(y_k | inputs), marginalized over the other receivers:
    // result[flat_inputs * |Y_k| + y]
    std::vector<double> receiver_marginal(int receiver) const;
};

struct DiscreteChannel {
    DiscreteLaw law;
    std::vector<Pmf> input_pmfs;  // base p(x), p(w), ...

    int ports() const { return static_cast<int>(law.input_sizes.size()); }
    int receivers() const { return static_cast<int>(law.output_sizes.size()); }
    void validate() const;
};

// Convenience constructors used by tests and the bundled corpus.
DiscreteChannel make_discrete_ic(int x_size, int w_size, int y1_size, int y2_size,
                                 const std::vector<double>& joint_law,
                                 const Pmf& px, const Pmf& pw);
DiscreteChannel random_discrete_ic(Rng& rng, int max_alphabet);
DiscreteChannel random_mac3(Rng& rng, int a_size, int b_size, int c_size, int y_size);

// ---------------------------------------------------------------------------
// Symbol-level superposition map: layer symbols in, transmit symbol out.
// For constellation channels the table holds the complex transmit values
// (out_dim > 1 stacks one value per antenna); for discrete channels the
// index_table maps into the port alphabet.
struct SymbolMap {
    std::vector<int> layer_sizes;
    int out_dim = 1;
    bool is_real = true;
    std::vector<Cplx> values;       // flat combo * out_dim (constellation maps)
    std::vector<int> index_table;   // flat combo -> symbol index (discrete maps)
    std::string name;

    int flat() const { return flat_size(layer_sizes); }
    const Cplx* value(int flat_combo) const { return &values[flat_combo * out_dim]; }
    // Mean |value|^2 (summed over out_dim) under uniform layer inputs.
    double average_power() const;
};

enum class HigherMapKind {
    Pam8From3Bpsk,
    Pam8FromBpskPam4,
    Qam16From2Qpsk,
    Qam16From2Pam4,
    MimoAntenna,
};

SymbolMap make_bpsk();
SymbolMap make_4pam_natural();
SymbolMap make_4pam_gray();
SymbolMap make_higher_map(HigherMapKind kind);
SymbolMap symbol_map_by_name(const std::string& name);

// ---------------------------------------------------------------------------
// Two-sender Gaussian interference channel with finite constellations.
// Receiver k sees sum_j g[k][j] * sqrt(P) * symbol_j + noise, noise variance
// 1 per real dimension for real signals;
// complex signals use variance 1/2 per real dimension so the total noise
// power is 1 in both conventions.
struct GaussianChannel {
    double g[2][2] = {{1, 0}, {0, 1}};  // g[receiver][sender]
    double power = 1.0;
    std::array<SymbolMap, 2> maps = {make_bpsk(), make_bpsk()};
    int quad_nodes = kDefaultQuadNodes;

    double amplitude(int receiver, int sender) const {
        return g[receiver][sender] * std::sqrt(power);
    }
    bool complex_signal() const { return !maps[0].is_real || !maps[1].is_real; }
    double snr(int sender) const {
        double a = amplitude(sender, sender);
        return a * a;
    }
    double inr(int receiver) const {
        double a = amplitude(receiver, 1 - receiver);
        return a * a;
    }
};

GaussianChannel make_symmetric_gaussian(double snr_db, double inr_db,
                                        const std::string& map1 = "4pam_natural",
                                        const std::string& map2 = "bpsk");

// Per-input Gaussian output statistics on Gauss-Hermite node grids; the
// precomputation backing all quadrature mutual-information evaluations.
// Supports 1-D (real) and 2-D (complex) signals; anything wider is rejected.
struct QuadratureModel {
    int nodes = kDefaultQuadNodes;
    int signal_dims = 1;          // real dims of the receive signal
    double sigma_per_dim = 1.0;   // noise std dev per real dimension
    // mean[receiver][flat symbol combo over (map1, map2) alphabets]
    std::vector<std::vector<Cplx>> mean;
    std::vector<int> port_flat_sizes;
};

QuadratureModel discretize_gaussian(const GaussianChannel& ch, int quad_nodes);

// Point-to-point view at `receiver` with the other sender replaced by Gaussian
// noise of equal average power (constellation information discarded).
GaussianChannel gaussian_substituted(const GaussianChannel& ch, int receiver);

// ---------------------------------------------------------------------------
// JSON channel descriptions: {"type":"discrete"|"gaussian", ...}.
struct ChannelConfig {
    bool is_gaussian = false;
    DiscreteChannel discrete;
    GaussianChannel gaussian;
};

ChannelConfig load_channel_json(const std::string& text);
ChannelConfig load_channel_file(const std::string& path);

}  // namespace swsc
