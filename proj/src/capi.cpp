#include "swsc.h"

#include <cstring>
#include <string>

#include "core/schemes.hpp"
#include "core/sim.hpp"
#include "core/sweeps.hpp"
#include "core/verify.hpp"

using namespace swsc;

struct swsc_channel {
    IcModel model;
    // Retained for the common/private-message construction.
    bool is_discrete = false;
};

struct swsc_region {
    RateRegion2 region;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

swsc_status fail(swsc_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
swsc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const InfeasibleOrderError& e) {
        return fail(SWSC_ERR_INFEASIBLE, e.what());
    } catch (const ConfigError& e) {
        return fail(SWSC_ERR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(SWSC_ERR_INVALID, e.what());
    }
}

}  // namespace

extern "C" {

const char* swsc_last_error(void) { return g_last_error.c_str(); }

void swsc_string_free(char* text) { std::free(text); }

void swsc_set_jobs(int jobs) { set_default_jobs(jobs); }

swsc_status swsc_channel_from_json(const char* json_text, swsc_channel** out) {
    if (!json_text || !out) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        ChannelConfig cfg = load_channel_json(json_text);
        auto* ch = new swsc_channel;
        ch->model = IcModel::from(cfg);
        ch->is_discrete = !cfg.is_gaussian;
        *out = ch;
        return SWSC_OK;
    });
}

swsc_status swsc_channel_from_file(const char* path, swsc_channel** out) {
    if (!path || !out) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        ChannelConfig cfg = load_channel_file(path);
        auto* ch = new swsc_channel;
        ch->model = IcModel::from(cfg);
        ch->is_discrete = !cfg.is_gaussian;
        *out = ch;
        return SWSC_OK;
    });
}

void swsc_channel_free(swsc_channel* ch) { delete ch; }

swsc_status swsc_mutual_info(const swsc_channel* ch, uint32_t target_mask,
                             uint32_t cond_mask, int receiver, double* bits) {
    if (!ch || !bits) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        LayerSplit split = ch->model.trivial();
        *bits = ch->model.mi(split, {target_mask, cond_mask, receiver});
        return SWSC_OK;
    });
}

swsc_status swsc_region_compute(const swsc_channel* ch, const char* scheme,
                                const char* order_spec, double alpha,
                                double alpha2, int grid, swsc_region** out) {
    if (!ch || !scheme || !out) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        const IcModel& m = ch->model;
        std::string name = scheme;
        RateRegion2 region;
        if (name == "ian") {
            region = region_ian(m);
        } else if (name == "ian-subst") {
            if (!m.gaussian)
                throw ConfigError("ian-subst needs a gaussian channel");
            Cell c;
            c.r1_max = ian_substituted_rate(m.g, 0);
            c.r2_max = ian_substituted_rate(m.g, 1);
            c.label = "ian-subst";
            region.cells.push_back(c);
        } else if (name == "scd") {
            region = region_scd(m);
        } else if (name == "snd") {
            region = region_snd(m);
        } else if (name == "sd1") {
            region = region_sd(m, 0);
        } else if (name == "sd2") {
            region = region_sd(m, 1);
        } else if (name == "rs") {
            LayerSplit split = erasure_ic_split(m, 0, alpha);
            RsOrder d1{{{0, 0}, {1, 0}, {0, 1}}};
            RsOrder d2{{{0, 0}, {0, 1}, {1, 0}}};
            (void)alpha2;
            region = region_rate_splitting(m, split, d1, d2);
        } else if (name == "swsc") {
            LayerSplit split = m.gaussian
                                   ? m.trivial()
                                   : composed_ic_split(m, 0, alpha, alpha2).split;
            int K = split.ports[0].layers();
            int L = split.ports[1].layers();
            SwscOrder d1, d2;
            if (order_spec && *order_spec) {
                auto pair = parse_order_pair(order_spec);
                d1 = pair.first;
                d2 = pair.second;
            } else {
                // Staggered conditioning: receiver 1 takes the other stream
                // fresh, receiver 2 one window later.
                d1 = {{{0, -(K - 1)}, {1, -(L - 1)}}};
                d2 = {{{0, -(K - 1)}, {1, -L}}};
            }
            region = region_swsc(m, split, d1, d2);
        } else if (name == "swsc-union") {
            region = region_swsc_union(m, OrderFamily::FullFamily,
                                       grid >= 5 ? grid : 21);
        } else {
            throw ConfigError("unknown scheme: " + name);
        }
        auto* r = new swsc_region{std::move(region)};
        *out = r;
        return SWSC_OK;
    });
}

swsc_status swsc_region_hk(const swsc_channel* ch, int lambda1, int lambda2,
                           double alpha_prime, double alpha_dblprime, double beta,
                           double gamma, swsc_region** out) {
    if (!ch || !out) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        if (!ch->is_discrete)
            throw ConfigError("hk region needs a discrete channel");
        const DiscreteChannel& ic = ch->model.d;
        if (ic.law.input_sizes[0] != 4 || ic.law.input_sizes[1] != 4)
            throw ConfigError("hk region needs 4-ary sender alphabets");
        std::vector<int> pair_map = {0, 1, 2, 3};
        Pmf half = {0.5, 0.5};
        DiscreteChannel ch4 =
            hk_channel_view(ic, 2, 2, 2, 2, pair_map, pair_map, half, half, half, half);
        LayerSplit split;
        split.ports.push_back(
            compose_three_layer(half, alpha_prime, alpha_dblprime).port);
        split.ports.push_back(erasure_port_split(half, beta));
        PortSplit u;
        u.layer_pmfs = {half};
        u.table = {0, 1};
        u.target = half;
        split.ports.push_back(u);
        split.ports.push_back(erasure_port_split(half, gamma));
        RateRegion4 aux = region_hk(ch4, split, lambda1, lambda2);
        auto* r = new swsc_region{project_to_2(aux)};
        *out = r;
        return SWSC_OK;
    });
}

swsc_status swsc_region_edge_loss(const swsc_region* region, int blocks,
                                  int k_layers, int l_layers, swsc_region** out) {
    if (!region || !out) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        *out = new swsc_region{apply_edge_loss(region->region, blocks, k_layers,
                                               l_layers)};
        return SWSC_OK;
    });
}

swsc_status swsc_region_boundary_csv(const swsc_region* region, int resolution,
                                     char** out_csv) {
    if (!region || !out_csv) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        *out_csv = dup_string(
            region_boundary_csv(region->region, resolution > 0 ? resolution : 128));
        return SWSC_OK;
    });
}

swsc_status swsc_region_constraints_json(const swsc_region* region,
                                         char** out_json) {
    if (!region || !out_json) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        *out_json = dup_string(region_constraints_json(region->region));
        return SWSC_OK;
    });
}

int swsc_region_contains(const swsc_region* region, double r1, double r2,
                         double slack) {
    if (!region) return 0;
    return region->region.contains(r1, r2, slack) ? 1 : 0;
}

swsc_status swsc_region_max_symmetric(const swsc_region* region, double* rate) {
    if (!region || !rate) return fail(SWSC_ERR_INVALID, "null argument");
    *rate = region->region.max_symmetric();
    return SWSC_OK;
}

void swsc_region_free(swsc_region* region) { delete region; }

swsc_status swsc_verify(const char* suite, char** out_report) {
    if (!suite) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        SuiteResult res = run_suite(suite);
        std::string line = res.name + ": " + (res.pass ? "PASS" : "FAIL") +
                           " (max residual " + format_double(res.max_residual) +
                           ", threshold " + format_double(res.threshold) + "; " +
                           res.detail + ")";
        if (out_report) *out_report = dup_string(line);
        if (!res.pass) return fail(SWSC_ERR_FAILURE, line);
        return SWSC_OK;
    });
}

swsc_status swsc_schedule_dump(int k_layers, int l_layers, int blocks,
                               char** out_text) {
    if (!out_text) return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        if (k_layers < 1 || l_layers < 1 || blocks < k_layers + 1)
            throw ConfigError("schedule needs layers >= 1 and blocks > layers");
        *out_text = dup_string(schedule_dump(k_layers, l_layers, blocks));
        return SWSC_OK;
    });
}

swsc_status swsc_simulate(const char* config_json, const char* scheme,
                          char** out_report_json) {
    if (!config_json || !scheme || !out_report_json)
        return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        SimConfig cfg = sim_config_from_json(config_json);
        std::string name = scheme;
        BlerReport rep;
        if (name == "swsc")
            rep = run_swsc(cfg);
        else if (name == "ian")
            rep = run_ian(cfg);
        else
            throw ConfigError("scheme must be swsc or ian");
        *out_report_json = dup_string(rep.to_json());
        return SWSC_OK;
    });
}

swsc_status swsc_curve_csv(double snr_db, const double* inr_db, size_t inr_count,
                           const char* map1, const char* map2, char** out_csv) {
    if (!inr_db || !inr_count || !out_csv)
        return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        std::vector<double> inrs(inr_db, inr_db + inr_count);
        auto points = theory_curve(snr_db, inrs, map1 ? map1 : "4pam_natural",
                                   map2 ? map2 : "bpsk");
        std::string csv = "inr_db,rate_bits,scheme\n";
        for (const auto& p : points) {
            csv += format_double(p.inr_db) + "," + format_double(p.ian_subst) +
                   ",ian\n";
            csv += format_double(p.inr_db) + "," + format_double(p.ian_marginal) +
                   ",ian-marginal\n";
            csv += format_double(p.inr_db) + "," + format_double(p.swcm) + ",swcm\n";
            csv += format_double(p.inr_db) + "," + format_double(p.snd) + ",snd\n";
        }
        *out_csv = dup_string(csv);
        return SWSC_OK;
    });
}

swsc_status swsc_sim_sweep_csv(const char* config_json, const double* inr_db,
                               size_t inr_count, const double* rates,
                               size_t rate_count, int include_ian, char** out_csv) {
    if (!config_json || !inr_db || !rates || !out_csv)
        return fail(SWSC_ERR_INVALID, "null argument");
    return guarded([&] {
        SimConfig cfg = sim_config_from_json(config_json);
        std::vector<double> inrs(inr_db, inr_db + inr_count);
        std::vector<double> rgrid(rates, rates + rate_count);
        auto rows = simulate_sweep(cfg, inrs, rgrid, include_ian != 0);
        auto summary = feasibility_summary(rows, 0.1);
        rows.insert(rows.end(), summary.begin(), summary.end());
        *out_csv = dup_string(sweep_csv(rows));
        return SWSC_OK;
    });
}

}  // extern "C"
