// Command-line front end for the interference-channel toolkit. Talks to the
// shared library strictly through the C interface in swsc.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swsc.h"

namespace {

// Exit codes: 0 success, 1 property-suite failure, 2 config error,
// 3 infeasible order.
int exit_code(swsc_status st) {
    switch (st) {
        case SWSC_OK:
            return 0;
        case SWSC_ERR_FAILURE:
            return 1;
        case SWSC_ERR_CONFIG:
            return 2;
        case SWSC_ERR_INFEASIBLE:
            return 3;
        default:
            return 2;
    }
}

int fail_with(swsc_status st) {
    std::cerr << "error: " << swsc_last_error() << "\n";
    return exit_code(st);
}

int write_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::string read_file(const std::string& path, bool* ok) {
    std::ifstream in(path);
    if (!in) {
        *ok = false;
        return "";
    }
    std::stringstream ss;
    ss << in.rdbuf();
    *ok = true;
    return ss.str();
}

struct ChannelGuard {
    swsc_channel* ch = nullptr;
    ~ChannelGuard() { swsc_channel_free(ch); }
};
struct RegionGuard {
    swsc_region* r = nullptr;
    ~RegionGuard() { swsc_region_free(r); }
};
struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { swsc_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate regions and link simulation for two-user interference channels"};
    app.require_subcommand(1);

    std::string channel_path, out_path, scheme = "snd", order_spec, suite;
    std::string split_spec = "2-1", config_path, sim_scheme = "swsc";
    std::string map1 = "4pam_natural", map2 = "bpsk", inr_list = "6,7,8,9,10";
    std::string rate_list;
    double alpha = 0.5, alpha2 = 0.25, snr_db = 8.0;
    unsigned mi_target = 0, mi_cond = 0;
    int grid = 21, blocks = 6, resolution = 128, receiver = 0;
    int edge_blocks = 0;
    int lambda1 = 1, lambda2 = 7;
    double beta = 0.5, gamma = 0.5;
    uint64_t seed = 0;
    bool seed_set = false, simulate_curve = false;
    int jobs = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path ('-' = stdout)");
    };

    auto* mi_cmd = app.add_subcommand("mi", "conditional mutual information");
    mi_cmd->add_option("--channel", channel_path, "channel JSON")->required();
    mi_cmd->add_option("--target", mi_target, "target layer mask")->required();
    mi_cmd->add_option("--cond", mi_cond, "conditioning layer mask");
    mi_cmd->add_option("--receiver", receiver, "receiver index (0 or 1)");
    add_common(mi_cmd);

    auto* region_cmd = app.add_subcommand("region", "rate-region boundary CSV");
    region_cmd->add_option("--channel", channel_path, "channel JSON")->required();
    region_cmd->add_option("--scheme", scheme,
                           "ian|ian-subst|scd|snd|sd1|sd2|rs|swsc|swsc-union|hk");
    region_cmd->add_option("--order", order_spec, "d1=m1@-1>m2@0;d2=...");
    region_cmd->add_option("--alpha", alpha, "erasure split parameter");
    region_cmd->add_option("--alpha2", alpha2, "second erasure parameter");
    region_cmd->add_option("--beta", beta, "first private-part erasure");
    region_cmd->add_option("--gamma", gamma, "second private-part erasure");
    region_cmd->add_option("--lambda1", lambda1, "receiver-1 layer order (1..6)");
    region_cmd->add_option("--lambda2", lambda2, "receiver-2 layer order (7..12)");
    region_cmd->add_option("--grid", grid, "sweep grid for swsc-union");
    region_cmd->add_option("--resolution", resolution, "boundary samples");
    region_cmd->add_option("--edge-blocks", edge_blocks,
                           "apply the finite-block rate discount for this many blocks");
    region_cmd->add_option("--split", split_spec, "K-L split for --edge-blocks");
    region_cmd->add_option("--jobs", jobs, "worker threads");
    add_common(region_cmd);

    auto* curve_cmd = app.add_subcommand("curve", "symmetric-rate curves vs INR");
    curve_cmd->add_option("--snr", snr_db, "SNR in dB");
    curve_cmd->add_option("--inr", inr_list, "comma-separated INRs in dB");
    curve_cmd->add_option("--map1", map1, "sender-1 symbol map");
    curve_cmd->add_option("--map2", map2, "sender-2 symbol map");
    curve_cmd->add_flag("--simulate", simulate_curve,
                        "append simulated sweep rows (needs --config)");
    curve_cmd->add_option("--config", config_path, "sim config JSON for --simulate");
    curve_cmd->add_option("--rates", rate_list, "rate grid for --simulate");
    curve_cmd->add_option("--jobs", jobs, "worker threads");
    add_common(curve_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "run the link simulation");
    sim_cmd->add_option("--config", config_path, "sim config JSON")->required();
    sim_cmd->add_option("--scheme", sim_scheme, "swsc|ian");
    sim_cmd->add_option("--seed", seed, "override master seed")->each([&](std::string) {
        seed_set = true;
    });
    sim_cmd->add_option("--jobs", jobs, "worker threads");
    add_common(sim_cmd);

    auto* sched_cmd = app.add_subcommand("schedule", "dump the block schedule");
    sched_cmd->add_option("--split", split_spec, "K-L split, e.g. 2-1 or 3-1");
    sched_cmd->add_option("--blocks", blocks, "number of blocks");
    add_common(sched_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
    verify_cmd->add_option("suite", suite, "lemma1|eq5|fm|prop1|prop2|thm2|thm3|all")
        ->required();
    add_common(verify_cmd);

    CLI11_PARSE(app, argc, argv);

    if (jobs > 0) swsc_set_jobs(jobs);

    if (mi_cmd->parsed()) {
        ChannelGuard ch;
        swsc_status st = swsc_channel_from_file(channel_path.c_str(), &ch.ch);
        if (st != SWSC_OK) return fail_with(st);
        double bits = 0;
        st = swsc_mutual_info(ch.ch, mi_target, mi_cond, receiver, &bits);
        if (st != SWSC_OK) return fail_with(st);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g\n", bits);
        return write_output(out_path, buf);
    }

    if (region_cmd->parsed()) {
        ChannelGuard ch;
        swsc_status st = swsc_channel_from_file(channel_path.c_str(), &ch.ch);
        if (st != SWSC_OK) return fail_with(st);
        RegionGuard region;
        if (scheme == "hk")
            st = swsc_region_hk(ch.ch, lambda1, lambda2, alpha, alpha2, beta, gamma,
                                &region.r);
        else
            st = swsc_region_compute(ch.ch, scheme.c_str(),
                                     order_spec.empty() ? nullptr : order_spec.c_str(),
                                     alpha, alpha2, grid, &region.r);
        if (st != SWSC_OK) return fail_with(st);
        if (edge_blocks > 0) {
            int k = 2, l = 1;
            if (std::sscanf(split_spec.c_str(), "%d-%d", &k, &l) != 2) {
                std::cerr << "error: --split must look like 2-1\n";
                return 2;
            }
            RegionGuard discounted;
            st = swsc_region_edge_loss(region.r, edge_blocks, k, l, &discounted.r);
            if (st != SWSC_OK) return fail_with(st);
            std::swap(region.r, discounted.r);
        }
        StringGuard text;
        bool json_out = out_path.size() > 5 &&
                        out_path.substr(out_path.size() - 5) == ".json";
        st = json_out ? swsc_region_constraints_json(region.r, &text.s)
                      : swsc_region_boundary_csv(region.r, resolution, &text.s);
        if (st != SWSC_OK) return fail_with(st);
        return write_output(out_path, text.s);
    }

    if (curve_cmd->parsed()) {
        auto inrs = parse_list(inr_list);
        StringGuard csv;
        swsc_status st = swsc_curve_csv(snr_db, inrs.data(), inrs.size(),
                                        map1.c_str(), map2.c_str(), &csv.s);
        if (st != SWSC_OK) return fail_with(st);
        std::string text = csv.s;
        if (simulate_curve) {
            if (config_path.empty() || rate_list.empty()) {
                std::cerr << "error: --simulate needs --config and --rates\n";
                return 2;
            }
            bool ok = false;
            std::string cfg = read_file(config_path, &ok);
            if (!ok) {
                std::cerr << "error: cannot open sim config: " << config_path << "\n";
                return 2;
            }
            auto rates = parse_list(rate_list);
            StringGuard sim_csv;
            st = swsc_sim_sweep_csv(cfg.c_str(), inrs.data(), inrs.size(),
                                    rates.data(), rates.size(), 1, &sim_csv.s);
            if (st != SWSC_OK) return fail_with(st);
            std::string body = sim_csv.s;
            body.erase(0, body.find('\n') + 1);  // drop the duplicate header
            text += body;
        }
        return write_output(out_path, text.c_str());
    }

    if (sim_cmd->parsed()) {
        bool ok = false;
        std::string cfg = read_file(config_path, &ok);
        if (!ok) {
            std::cerr << "error: cannot open sim config: " << config_path << "\n";
            return 2;
        }
        if (seed_set || jobs > 0) {
            // Patch overrides into the JSON text; the library validates the
            // result. Later duplicate keys win with the parser in use.
            auto inject = [&](const std::string& key, const std::string& value) {
                auto pos = cfg.find_last_of('}');
                if (pos == std::string::npos) return;
                auto open = cfg.find('{');
                bool empty_object =
                    cfg.find_first_not_of(" \t\r\n", open + 1) == pos;
                cfg.insert(pos, (empty_object ? "" : ",") + std::string("\"") + key +
                                    "\":" + value);
            };
            if (seed_set) inject("master_seed", std::to_string(seed));
            if (jobs > 0) inject("jobs", std::to_string(jobs));
        }
        StringGuard report;
        swsc_status st = swsc_simulate(cfg.c_str(), sim_scheme.c_str(), &report.s);
        if (st != SWSC_OK) return fail_with(st);
        return write_output(out_path, report.s);
    }

    if (sched_cmd->parsed()) {
        int k = 2, l = 1;
        if (std::sscanf(split_spec.c_str(), "%d-%d", &k, &l) != 2) {
            std::cerr << "error: --split must look like 2-1\n";
            return 2;
        }
        StringGuard text;
        swsc_status st = swsc_schedule_dump(k, l, blocks, &text.s);
        if (st != SWSC_OK) return fail_with(st);
        return write_output(out_path, text.s);
    }

    if (verify_cmd->parsed()) {
        std::vector<std::string> names;
        if (suite == "all")
            names = {"lemma1", "eq5", "fm", "prop1", "prop2", "thm2", "thm3"};
        else
            names = {suite};
        std::string all;
        bool any_fail = false;
        for (const auto& name : names) {
            StringGuard line;
            swsc_status st = swsc_verify(name.c_str(), &line.s);
            if (st == SWSC_ERR_CONFIG || st == SWSC_ERR_INVALID) return fail_with(st);
            if (st == SWSC_ERR_FAILURE) any_fail = true;
            all += line.s ? line.s : "";
            all += "\n";
        }
        int rc = write_output(out_path, all.c_str());
        if (rc != 0) return rc;
        if (!out_path.empty() && out_path != "-") std::cout << all;
        return any_fail ? 1 : 0;
    }

    return 0;
}
