#pragma once

#include <string>
#include <vector>

#include "channel.hpp"
#include "convcode.hpp"
#include "schemes.hpp"

namespace swsc {

// Per-block assignment of message indices to layers: message i of stream s
// occupies that stream's deepest layer in block i and climbs one layer per
// block. Out-of-range indices are the pinned known message (index 0).
struct BlockSchedule {
    int layers = 2;  // this stream's layer count
    int blocks = 0;

    // 1-based message index at (layer k0, block j0), both 0-based; 0 = pinned.
    int message_at(int layer, int block) const {
        int i = block + layer + 2 - layers;
        return (i >= 1 && i <= messages()) ? i : 0;
    }
    // Codeword part (0-based) riding layer k0: part p is sent first on the
    // deepest layer.
    int part_at(int layer) const { return layers - 1 - layer; }
    int messages() const { return blocks - layers + 1; }
};

std::string schedule_dump(int k_layers, int l_layers, int blocks);

struct SimConfig {
    int n = 1024;
    int b = 12;
    int trials = 100;
    double rate1 = 0.8, rate2 = 0.8;  // bits/symbol
    std::string map1 = "4pam_natural", map2 = "bpsk";
    double snr_db = 8.0, inr_db = 8.0;
    std::string order1, order2;  // "m1@-1>m2@0" style; empty = auto-select
    int crc_bits = 16;
    uint64_t master_seed = 1;
    std::string policy = "continue";          // or "abort_stream"
    std::string ian_variant = "marginalize";  // or "gaussian"
    double llr_clamp = 40.0;
    int jobs = 0;

    void validate() const;
};

SimConfig sim_config_from_json(const std::string& text);
SimConfig sim_config_from_file(const std::string& path);
std::string sim_config_to_json(const SimConfig& cfg);

struct StreamStats {
    long messages = 0;
    long errors = 0;
    long crc_misses = 0;  // undetected CRC failures among erroneous decodes
    std::vector<long> errors_by_index;  // propagation trace over message index
    double bler() const { return messages ? static_cast<double>(errors) / messages : 0.0; }
};

struct BlerReport {
    std::string scheme;  // "swsc" or "ian"
    StreamStats stream[2];
    double nominal_rate[2] = {0, 0};
    double effective_rate[2] = {0, 0};
    std::string order1, order2;  // orders actually used (swsc)
    std::string to_json() const;
};

BlerReport run_swsc(const SimConfig& cfg);
BlerReport run_ian(const SimConfig& cfg);

// Bit LLRs for one layer of one sender over a received block, marginalizing
// the unknown layers of both senders and substituting known layer bits.
// Exposed for tests.
std::vector<double> demap_layer_llr(
    const std::vector<double>& y, double a_own, double a_int,
    const SymbolMap& own_map, const SymbolMap& int_map, int target_layer,
    const std::vector<const uint8_t*>& own_known,  // per own layer, null if unknown
    const std::vector<const uint8_t*>& int_known, double llr_clamp,
    double extra_noise_var = 0.0);

// Largest rate on `rate_grid` with both-stream BLER below `threshold`;
// -1 when none qualifies.
struct SweepRow {
    double inr_db;
    double rate;
    double bler1, bler2;
    std::string scheme;
};
std::vector<SweepRow> simulate_sweep(const SimConfig& base,
                                     const std::vector<double>& inr_list,
                                     const std::vector<double>& rate_grid,
                                     bool include_ian);
// One row per (inr, scheme): the largest swept rate whose both-stream BLER
// stays below `threshold` (rate -1 when none does).
std::vector<SweepRow> feasibility_summary(const std::vector<SweepRow>& rows,
                                          double threshold);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace swsc
