#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sweeps.hpp"

namespace swsc {

using nlohmann::json;

void SimConfig::validate() const {
    if (n < 128) throw ConfigError("n must be >= 128");
    if (b < 3) throw ConfigError("b must be >= 3");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (rate1 <= 0 || rate2 <= 0) throw ConfigError("rates must be positive");
    if (crc_bits != 16) throw ConfigError("only crc_bits = 16 is supported");
    if (policy != "continue" && policy != "abort_stream")
        throw ConfigError("policy must be continue or abort_stream");
    if (ian_variant != "marginalize" && ian_variant != "gaussian")
        throw ConfigError("ian_variant must be marginalize or gaussian");
}

SimConfig sim_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("sim config parse error: ") + e.what());
    }
    SimConfig c;
    c.n = j.value("n", c.n);
    c.b = j.value("b", c.b);
    c.trials = j.value("trials", c.trials);
    c.rate1 = j.value("rate1", c.rate1);
    c.rate2 = j.value("rate2", c.rate2);
    c.map1 = j.value("map1", c.map1);
    c.map2 = j.value("map2", c.map2);
    c.snr_db = j.value("snr_db", c.snr_db);
    c.inr_db = j.value("inr_db", c.inr_db);
    c.order1 = j.value("order1", c.order1);
    c.order2 = j.value("order2", c.order2);
    c.crc_bits = j.value("crc_bits", c.crc_bits);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.policy = j.value("policy", c.policy);
    c.ian_variant = j.value("ian_variant", c.ian_variant);
    c.llr_clamp = j.value("llr_clamp", c.llr_clamp);
    c.jobs = j.value("jobs", c.jobs);
    c.validate();
    return c;
}

SimConfig sim_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sim config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return sim_config_from_json(ss.str());
}

std::string sim_config_to_json(const SimConfig& c) {
    json j;
    j["n"] = c.n;
    j["b"] = c.b;
    j["trials"] = c.trials;
    j["rate1"] = c.rate1;
    j["rate2"] = c.rate2;
    j["map1"] = c.map1;
    j["map2"] = c.map2;
    j["snr_db"] = c.snr_db;
    j["inr_db"] = c.inr_db;
    j["order1"] = c.order1;
    j["order2"] = c.order2;
    j["crc_bits"] = c.crc_bits;
    j["master_seed"] = c.master_seed;
    j["policy"] = c.policy;
    j["ian_variant"] = c.ian_variant;
    j["llr_clamp"] = c.llr_clamp;
    j["jobs"] = c.jobs;
    return j.dump(2);
}

std::string schedule_dump(int k_layers, int l_layers, int blocks) {
    std::ostringstream os;
    auto row = [&](const std::string& name, int stream, int layer, int layers) {
        BlockSchedule s{layers, blocks};
        os << name;
        for (int j = 0; j < blocks; ++j) {
            int m = s.message_at(layer, j);
            std::string cell = m == 0 ? "1"
                                      : "m" + std::to_string(stream + 1) + "(" +
                                            std::to_string(m) + ")";
            os << "\t" << cell;
        }
        os << "\n";
    };
    os << "block";
    for (int j = 1; j <= blocks; ++j) os << "\t" << j;
    os << "\n";
    for (int k = 0; k < k_layers; ++k) row("X" + std::to_string(k + 1), 0, k, k_layers);
    for (int l = 0; l < l_layers; ++l)
        row(l_layers == 1 ? "W" : "W" + std::to_string(l + 1), 1, l, l_layers);
    return os.str();
}

// ---------------------------------------------------------------------------

std::vector<double> demap_layer_llr(const std::vector<double>& y, double a_own,
                                    double a_int, const SymbolMap& own_map,
                                    const SymbolMap& int_map, int target_layer,
                                    const std::vector<const uint8_t*>& own_known,
                                    const std::vector<const uint8_t*>& int_known,
                                    double llr_clamp, double extra_noise_var) {
    const int n = static_cast<int>(y.size());
    const int own_flat = own_map.flat();
    const int int_flat = int_map.flat();
    const int own_layers = static_cast<int>(own_map.layer_sizes.size());
    const int int_layers = static_cast<int>(int_map.layer_sizes.size());

    // Digit tables (all layers binary on the link).
    std::vector<std::vector<int>> own_digits(own_flat), int_digits(int_flat);
    std::vector<int> tmp;
    for (int f = 0; f < own_flat; ++f) {
        unflatten(f, own_map.layer_sizes, tmp);
        own_digits[f] = tmp;
    }
    for (int f = 0; f < int_flat; ++f) {
        unflatten(f, int_map.layer_sizes, tmp);
        int_digits[f] = tmp;
    }

    const double v_total = 1.0 + extra_noise_var;
    const double inv_scale = 1.0 / (2.0 * v_total);  // real signals

    std::vector<double> llr(n);
    for (int i = 0; i < n; ++i) {
        double best0 = -1e300, best1 = -1e300;
        double acc0 = 0.0, acc1 = 0.0;
        // Two-pass max + sum for a stable log-sum-exp.
        double exps_max[2] = {-1e300, -1e300};
        std::vector<std::pair<int, double>> terms;  // (target bit, exponent)
        for (int fo = 0; fo < own_flat; ++fo) {
            bool ok = true;
            for (int l = 0; l < own_layers; ++l)
                if (l != target_layer && own_known[l] && own_digits[fo][l] != own_known[l][i]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            int bit = own_digits[fo][target_layer];
            double mu_own = a_own * own_map.values[fo].real();
            for (int fi = 0; fi < int_flat; ++fi) {
                bool oki = true;
                for (int l = 0; l < int_layers; ++l)
                    if (int_known[l] && int_digits[fi][l] != int_known[l][i]) {
                        oki = false;
                        break;
                    }
                if (!oki) continue;
                double d = y[i] - mu_own - a_int * int_map.values[fi].real();
                double e = -d * d * inv_scale;
                terms.emplace_back(bit, e);
                if (e > exps_max[bit]) exps_max[bit] = e;
            }
        }
        for (auto [bit, e] : terms) {
            if (bit == 0)
                acc0 += std::exp(e - exps_max[0]);
            else
                acc1 += std::exp(e - exps_max[1]);
        }
        best0 = exps_max[0] + std::log(std::max(acc0, 1e-300));
        best1 = exps_max[1] + std::log(std::max(acc1, 1e-300));
        double v = best0 - best1;
        llr[i] = std::clamp(v, -llr_clamp, llr_clamp);
        terms.clear();
    }
    return llr;
}

// ---------------------------------------------------------------------------

namespace {

struct LinkSetup {
    SymbolMap maps[2];
    int layers[2];
    double amp[2][2];  // amp[receiver][sender]
    int info_len[2];
    int payload_len[2];
    int target_len[2];
    BlockSchedule sched[2];
    ConvCode code;
    // Interleavers per (stream, message index 0-based); message count differs
    // between the staggered and per-block arrangements, so size for both.
    std::vector<std::vector<uint32_t>> perms[2];
    std::vector<std::vector<uint8_t>> pad_parts[2];
    SwscOrder d[2];
    int extra_ends = 0;  // virtual block-ends past b for trailing messages
};

std::vector<std::vector<uint8_t>> encode_message(const LinkSetup& ls, int stream,
                                                 const std::vector<uint8_t>& payload,
                                                 const std::vector<uint32_t>& perm,
                                                 int n) {
    std::vector<uint8_t> info = payload;
    crc16_append(info);
    std::vector<uint8_t> coded = ls.code.encode(info);
    std::vector<uint8_t> matched = rate_match(coded, ls.target_len[stream]);
    std::vector<uint8_t> inter = apply_permutation(matched, perm);
    std::vector<std::vector<uint8_t>> parts(ls.layers[stream]);
    for (int p = 0; p < ls.layers[stream]; ++p)
        parts[p].assign(inter.begin() + static_cast<size_t>(p) * n,
                        inter.begin() + static_cast<size_t>(p + 1) * n);
    return parts;
}

LinkSetup make_setup(const SimConfig& cfg, bool staggered) {
    LinkSetup ls;
    ls.maps[0] = symbol_map_by_name(cfg.map1);
    ls.maps[1] = symbol_map_by_name(cfg.map2);
    if (!staggered && cfg.map1 == "4pam_natural")
        ls.maps[0] = symbol_map_by_name("4pam_gray");  // conventional BICM labeling
    for (int s = 0; s < 2; ++s) {
        for (int sz : ls.maps[s].layer_sizes)
            if (sz != 2) throw ConfigError("link simulation needs binary layers");
        if (!ls.maps[s].is_real)
            throw ConfigError("link simulation supports real constellations");
        ls.layers[s] = static_cast<int>(ls.maps[s].layer_sizes.size());
    }
    double gs = std::sqrt(db_to_linear(cfg.snr_db));
    double gi = std::sqrt(db_to_linear(cfg.inr_db));
    ls.amp[0][0] = gs;
    ls.amp[1][1] = gs;
    ls.amp[0][1] = gi;
    ls.amp[1][0] = gi;
    double rates[2] = {cfg.rate1, cfg.rate2};
    for (int s = 0; s < 2; ++s) {
        ls.info_len[s] = static_cast<int>(std::lround(rates[s] * cfg.n));
        ls.payload_len[s] = ls.info_len[s] - cfg.crc_bits;
        if (ls.payload_len[s] < 8) throw ConfigError("rate too low for the CRC");
        ls.target_len[s] = ls.layers[s] * cfg.n;
        if (ls.info_len[s] + ConvCode::kMemory > ls.target_len[s])
            throw ConfigError("rate too high for code rate-matching limits");
        // The per-block arrangement behaves like a single-layer schedule:
        // one message per block, no staggering.
        ls.sched[s] = {staggered ? ls.layers[s] : 1, cfg.b};
    }
    int msgs[2];
    for (int s = 0; s < 2; ++s)
        msgs[s] = staggered ? ls.sched[s].messages() : cfg.b;
    for (int s = 0; s < 2; ++s) {
        ls.perms[s].resize(msgs[s]);
        for (int i = 0; i < msgs[s]; ++i)
            ls.perms[s][i] = make_permutation(
                ls.target_len[s], derive_seed(cfg.master_seed, 0x17C0DE + s, i));
        std::vector<uint8_t> zero(ls.payload_len[s], 0);
        // The pinned message reuses the first interleaver.
        ls.pad_parts[s] = encode_message(ls, s, zero,
                                         make_permutation(ls.target_len[s],
                                                          derive_seed(cfg.master_seed,
                                                                      0x9AD + s, 0, 0)),
                                         cfg.n);
    }
    if (staggered) {
        if (!cfg.order1.empty())
            ls.d[0] = parse_swsc_order(cfg.order1);
        if (!cfg.order2.empty())
            ls.d[1] = parse_swsc_order(cfg.order2);
        if (cfg.order1.empty() || cfg.order2.empty()) {
            // Pick the feasible order pair with the widest worst-stream margin
            // at the configured operating point.
            IcModel m;
            m.gaussian = true;
            m.g = make_symmetric_gaussian(cfg.snr_db, cfg.inr_db, cfg.map1, cfg.map2);
            LayerSplit split = m.trivial();
            double best = -1e300;
            for (const auto& d1 : feasible_orders(ls.layers[0], ls.layers[1], 0))
                for (const auto& d2 : feasible_orders(ls.layers[0], ls.layers[1], 1)) {
                    RateRegion2 r = region_swsc(m, split, d1, d2);
                    const Cell& c = r.cells[0];
                    double margin = std::min(c.r1_max - cfg.rate1, c.r2_max - cfg.rate2);
                    double tie = c.r1_max + c.r2_max;
                    if (margin + 1e-9 * tie > best) {
                        best = margin + 1e-9 * tie;
                        if (cfg.order1.empty()) ls.d[0] = d1;
                        if (cfg.order2.empty()) ls.d[1] = d2;
                    }
                }
        }
        for (int r = 0; r < 2; ++r) {
            if (!ls.d[r].decodes(r))
                throw InfeasibleOrderError("receiver must decode its own stream");
            swsc_layer_order(ls.d[r], ls.layers[0], ls.layers[1]);  // validates lags
            for (const auto& st : ls.d[r].steps)
                ls.extra_ends = std::max(ls.extra_ends, -st.lag);
        }
    }
    return ls;
}

struct TrialResult {
    long errors[2] = {0, 0};
    long crc_misses[2] = {0, 0};
    std::vector<uint8_t> err_by_index[2];
};

std::vector<double> draw_noise(const SimConfig& cfg, int trial, int receiver,
                               int block) {
    Rng rng(derive_seed(cfg.master_seed, 0x4015E, trial,
                        static_cast<uint64_t>(receiver) * 4096 + block));
    std::vector<double> z(cfg.n);
    for (double& v : z) v = rng.next_gaussian();
    return z;
}

std::vector<uint8_t> draw_payload(const SimConfig& cfg, int stream, int trial,
                                  int msg, int len) {
    Rng rng(derive_seed(cfg.master_seed, 0xDA7A + stream, trial, msg));
    std::vector<uint8_t> p(len);
    for (auto& b : p) b = static_cast<uint8_t>(rng.next_u64() & 1);
    return p;
}

// Transmit symbols of one sender for all blocks given per-layer bit sources.
std::vector<std::vector<double>> modulate_sender(
    const SimConfig& cfg, const LinkSetup& ls, int stream,
    const std::vector<std::vector<const uint8_t*>>& layer_bits) {
    const SymbolMap& map = ls.maps[stream];
    std::vector<std::vector<double>> x(cfg.b, std::vector<double>(cfg.n));
    std::vector<int> radix(map.layer_sizes.size());
    int mul = 1;
    for (int l = static_cast<int>(map.layer_sizes.size()) - 1; l >= 0; --l) {
        radix[l] = mul;
        mul *= map.layer_sizes[l];
    }
    for (int j = 0; j < cfg.b; ++j)
        for (int i = 0; i < cfg.n; ++i) {
            int combo = 0;
            for (size_t l = 0; l < radix.size(); ++l)
                combo += layer_bits[j][l][i] * radix[l];
            x[j][i] = map.values[combo].real();
        }
    return x;
}

TrialResult run_swsc_trial(const SimConfig& cfg, const LinkSetup& ls, int trial) {
    const int b = cfg.b;
    const int n = cfg.n;
    const int N[2] = {ls.sched[0].messages(), ls.sched[1].messages()};

    // True payloads and encoded parts.
    std::vector<std::vector<uint8_t>> payload[2];
    std::vector<std::vector<std::vector<uint8_t>>> parts[2];  // [msg][part]
    for (int s = 0; s < 2; ++s) {
        payload[s].resize(N[s]);
        parts[s].resize(N[s]);
        for (int i = 0; i < N[s]; ++i) {
            payload[s][i] = draw_payload(cfg, s, trial, i + 1, ls.payload_len[s]);
            parts[s][i] = encode_message(ls, s, payload[s][i], ls.perms[s][i], n);
        }
    }

    // Layer bit sources per (stream, block, layer).
    std::vector<std::vector<const uint8_t*>> tx_bits[2];
    for (int s = 0; s < 2; ++s) {
        tx_bits[s].assign(b, std::vector<const uint8_t*>(ls.layers[s], nullptr));
        for (int j = 0; j < b; ++j)
            for (int k = 0; k < ls.layers[s]; ++k) {
                int m = ls.sched[s].message_at(k, j);
                int p = ls.sched[s].part_at(k);
                tx_bits[s][j][k] =
                    (m == 0 ? ls.pad_parts[s][p] : parts[s][m - 1][p]).data();
            }
    }

    auto x0 = modulate_sender(cfg, ls, 0, tx_bits[0]);
    auto x1 = modulate_sender(cfg, ls, 1, tx_bits[1]);

    std::vector<std::vector<double>> y[2];
    for (int r = 0; r < 2; ++r) {
        y[r].resize(b);
        for (int j = 0; j < b; ++j) {
            y[r][j] = draw_noise(cfg, trial, r, j);
            for (int i = 0; i < n; ++i)
                y[r][j][i] += ls.amp[r][0] * x0[j][i] + ls.amp[r][1] * x1[j][i];
        }
    }

    TrialResult res;
    for (int s = 0; s < 2; ++s) res.err_by_index[s].assign(N[s], 0);

    for (int r = 0; r < 2; ++r) {
        // Receiver r's view of each layer: pinned parts known, the rest
        // filled in as messages are recovered and re-encoded.
        std::vector<std::vector<const uint8_t*>> known[2];
        std::vector<std::vector<std::vector<uint8_t>>> store[2];  // re-encoded
        for (int s = 0; s < 2; ++s) {
            known[s].assign(b, std::vector<const uint8_t*>(ls.layers[s], nullptr));
            store[s].resize(N[s]);
            for (int j = 0; j < b; ++j)
                for (int k = 0; k < ls.layers[s]; ++k)
                    if (ls.sched[s].message_at(k, j) == 0)
                        known[s][j][k] = ls.pad_parts[s][ls.sched[s].part_at(k)].data();
        }
        std::vector<uint8_t> decoded[2];
        for (int s = 0; s < 2; ++s) decoded[s].assign(N[s], 0);
        bool aborted[2] = {false, false};

        for (int end = 0; end < b + ls.extra_ends; ++end) {
            for (const auto& st : ls.d[r].steps) {
                int s = st.stream;
                int i = (end + 1) + st.lag;  // 1-based message index
                if (i < 1 || i > N[s] || decoded[s][i - 1]) continue;
                // All blocks of this message must have been received.
                if (i - 1 + ls.layers[s] > b) continue;
                decoded[s][i - 1] = 1;
                if (aborted[s]) {
                    if (s == r) {
                        ++res.errors[s];
                        res.err_by_index[s][i - 1] = 1;
                    }
                    continue;
                }
                // Gather the codeword LLRs part by part.
                std::vector<double> llr;
                llr.reserve(ls.target_len[s]);
                for (int p = 0; p < ls.layers[s]; ++p) {
                    int bj = i - 1 + p;
                    int k0 = ls.layers[s] - 1 - p;
                    std::vector<const uint8_t*> own_known = known[s][bj];
                    own_known[k0] = nullptr;  // the part being decoded
                    const auto& int_known = known[1 - s][bj];
                    auto part_llr = demap_layer_llr(
                        y[r][bj], ls.amp[r][s], ls.amp[r][1 - s], ls.maps[s],
                        ls.maps[1 - s], k0, own_known, int_known, cfg.llr_clamp);
                    llr.insert(llr.end(), part_llr.begin(), part_llr.end());
                }
                std::vector<double> deint = invert_permutation(llr, ls.perms[s][i - 1]);
                std::vector<double> mother =
                    rate_dematch(deint, ls.code.coded_len(ls.info_len[s]));
                std::vector<uint8_t> info = ls.code.decode(mother, ls.info_len[s]);
                bool crc_ok = crc16_check(info);
                std::vector<uint8_t> pay(info.begin(), info.end() - cfg.crc_bits);
                bool err = pay != payload[s][i - 1];
                if (s == r && err) {
                    ++res.errors[s];
                    res.err_by_index[s][i - 1] = 1;
                    if (crc_ok) ++res.crc_misses[s];
                }
                if (!crc_ok && cfg.policy == "abort_stream") {
                    aborted[s] = true;
                    continue;
                }
                // Cancel: re-encode and substitute the symbols, right or not.
                store[s][i - 1] = encode_message(ls, s, pay, ls.perms[s][i - 1], n);
                for (int p = 0; p < ls.layers[s]; ++p) {
                    int bj = i - 1 + p;
                    int k0 = ls.layers[s] - 1 - p;
                    known[s][bj][k0] = store[s][i - 1][p].data();
                }
            }
        }
    }
    return res;
}

TrialResult run_ian_trial(const SimConfig& cfg, const LinkSetup& ls, int trial) {
    const int b = cfg.b;
    const int n = cfg.n;
    const int N = b;  // one message per block and stream
    const bool gaussian_noise_model = cfg.ian_variant == "gaussian";

    std::vector<std::vector<uint8_t>> payload[2];
    std::vector<std::vector<std::vector<uint8_t>>> parts[2];
    for (int s = 0; s < 2; ++s) {
        payload[s].resize(N);
        parts[s].resize(N);
        for (int i = 0; i < N; ++i) {
            payload[s][i] = draw_payload(cfg, s, trial, i + 1, ls.payload_len[s]);
            parts[s][i] = encode_message(ls, s, payload[s][i], ls.perms[s][i], n);
        }
    }
    std::vector<std::vector<const uint8_t*>> tx_bits[2];
    for (int s = 0; s < 2; ++s) {
        tx_bits[s].assign(b, std::vector<const uint8_t*>(ls.layers[s], nullptr));
        for (int j = 0; j < b; ++j)
            for (int k = 0; k < ls.layers[s]; ++k)
                tx_bits[s][j][k] = parts[s][j][ls.layers[s] - 1 - k].data();
    }
    auto x0 = modulate_sender(cfg, ls, 0, tx_bits[0]);
    auto x1 = modulate_sender(cfg, ls, 1, tx_bits[1]);

    TrialResult res;
    for (int s = 0; s < 2; ++s) res.err_by_index[s].assign(N, 0);

    for (int r = 0; r < 2; ++r) {
        int s = r;  // only the own stream
        for (int j = 0; j < b; ++j) {
            std::vector<double> y = draw_noise(cfg, trial, r, j);
            for (int i = 0; i < n; ++i)
                y[i] += ls.amp[r][0] * x0[j][i] + ls.amp[r][1] * x1[j][i];
            std::vector<double> llr;
            llr.reserve(ls.target_len[s]);
            for (int p = 0; p < ls.layers[s]; ++p) {
                int k0 = ls.layers[s] - 1 - p;
                std::vector<const uint8_t*> own_known(ls.layers[s], nullptr);
                std::vector<const uint8_t*> int_known(ls.layers[1 - s], nullptr);
                double a_int = ls.amp[r][1 - s];
                auto part_llr =
                    gaussian_noise_model
                        ? demap_layer_llr(y, ls.amp[r][s], 0.0, ls.maps[s],
                                          ls.maps[1 - s], k0, own_known, int_known,
                                          cfg.llr_clamp, a_int * a_int)
                        : demap_layer_llr(y, ls.amp[r][s], a_int, ls.maps[s],
                                          ls.maps[1 - s], k0, own_known, int_known,
                                          cfg.llr_clamp);
                llr.insert(llr.end(), part_llr.begin(), part_llr.end());
            }
            std::vector<double> deint = invert_permutation(llr, ls.perms[s][j]);
            std::vector<double> mother =
                rate_dematch(deint, ls.code.coded_len(ls.info_len[s]));
            std::vector<uint8_t> info = ls.code.decode(mother, ls.info_len[s]);
            std::vector<uint8_t> pay(info.begin(), info.end() - cfg.crc_bits);
            if (pay != payload[s][j]) {
                ++res.errors[s];
                res.err_by_index[s][j] = 1;
                if (crc16_check(info)) ++res.crc_misses[s];
            }
        }
    }
    return res;
}

BlerReport collect(const SimConfig& cfg, const LinkSetup& ls, bool staggered,
                   const std::vector<TrialResult>& trials) {
    BlerReport rep;
    rep.scheme = staggered ? "swsc" : "ian";
    rep.nominal_rate[0] = cfg.rate1;
    rep.nominal_rate[1] = cfg.rate2;
    for (int s = 0; s < 2; ++s) {
        int per_trial = staggered ? ls.sched[s].messages() : cfg.b;
        rep.stream[s].messages = static_cast<long>(per_trial) * cfg.trials;
        rep.stream[s].errors_by_index.assign(per_trial, 0);
        for (const auto& t : trials) {
            rep.stream[s].errors += t.errors[s];
            rep.stream[s].crc_misses += t.crc_misses[s];
            for (int i = 0; i < per_trial; ++i)
                rep.stream[s].errors_by_index[i] += t.err_by_index[s][i];
        }
        double nominal = s == 0 ? cfg.rate1 : cfg.rate2;
        rep.effective_rate[s] =
            staggered ? nominal * per_trial / cfg.b : nominal;
    }
    if (staggered) {
        rep.order1 = ls.d[0].to_string();
        rep.order2 = ls.d[1].to_string();
    }
    return rep;
}

}  // namespace

BlerReport run_swsc(const SimConfig& cfg) {
    cfg.validate();
    LinkSetup ls = make_setup(cfg, true);
    std::vector<TrialResult> results(cfg.trials);
    parallel_for(0, cfg.trials, cfg.jobs, [&](size_t t) {
        results[t] = run_swsc_trial(cfg, ls, static_cast<int>(t));
    });
    return collect(cfg, ls, true, results);
}

BlerReport run_ian(const SimConfig& cfg) {
    cfg.validate();
    LinkSetup ls = make_setup(cfg, false);
    std::vector<TrialResult> results(cfg.trials);
    parallel_for(0, cfg.trials, cfg.jobs, [&](size_t t) {
        results[t] = run_ian_trial(cfg, ls, static_cast<int>(t));
    });
    return collect(cfg, ls, false, results);
}

std::string BlerReport::to_json() const {
    json j;
    j["scheme"] = scheme;
    for (int s = 0; s < 2; ++s) {
        json js;
        js["messages"] = stream[s].messages;
        js["errors"] = stream[s].errors;
        js["bler"] = stream[s].bler();
        js["crc_misses"] = stream[s].crc_misses;
        js["errors_by_index"] = stream[s].errors_by_index;
        js["nominal_rate"] = nominal_rate[s];
        js["effective_rate"] = effective_rate[s];
        j["stream" + std::to_string(s + 1)] = js;
    }
    if (!order1.empty()) {
        j["order1"] = order1;
        j["order2"] = order2;
    }
    return j.dump(2);
}

std::vector<SweepRow> simulate_sweep(const SimConfig& base,
                                     const std::vector<double>& inr_list,
                                     const std::vector<double>& rate_grid,
                                     bool include_ian) {
    std::vector<SweepRow> rows;
    for (double inr : inr_list) {
        for (double rate : rate_grid) {
            SimConfig cfg = base;
            cfg.inr_db = inr;
            cfg.rate1 = rate;
            cfg.rate2 = rate;
            BlerReport sw = run_swsc(cfg);
            rows.push_back({inr, rate, sw.stream[0].bler(), sw.stream[1].bler(), "swsc"});
            if (include_ian) {
                BlerReport ia = run_ian(cfg);
                rows.push_back(
                    {inr, rate, ia.stream[0].bler(), ia.stream[1].bler(), "ian"});
            }
        }
    }
    return rows;
}

std::vector<SweepRow> feasibility_summary(const std::vector<SweepRow>& rows,
                                          double threshold) {
    std::vector<SweepRow> out;
    for (const auto& r : rows) {
        bool feasible = r.bler1 < threshold && r.bler2 < threshold;
        SweepRow* slot = nullptr;
        for (auto& o : out)
            if (o.inr_db == r.inr_db && o.scheme == r.scheme + "-feasible") slot = &o;
        if (!slot) {
            out.push_back({r.inr_db, -1.0, 0.0, 0.0, r.scheme + "-feasible"});
            slot = &out.back();
        }
        if (feasible && r.rate > slot->rate) {
            slot->rate = r.rate;
            slot->bler1 = r.bler1;
            slot->bler2 = r.bler2;
        }
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "inr_db,rate_bits,bler_stream1,bler_stream2,scheme\n";
    for (const auto& r : rows)
        os << format_double(r.inr_db) << "," << format_double(r.rate) << ","
           << format_double(r.bler1) << "," << format_double(r.bler2) << ","
           << r.scheme << "\n";
    return os.str();
}

}  // namespace swsc
