/* C interface to the interference-channel rate-region and link-simulation
 * toolkit. All functions return swsc_status; on any failure the thread-local
 * message from swsc_last_error() describes the problem. Strings returned
 * through char** are heap-allocated and must be released with
 * swsc_string_free(). Handles are opaque and freed with their _free call. */
#ifndef SWSC_H
#define SWSC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SWSC_OK = 0,
    SWSC_ERR_FAILURE = 1,    /* a verification suite reported failures */
    SWSC_ERR_CONFIG = 2,     /* malformed configuration or input file */
    SWSC_ERR_INFEASIBLE = 3, /* infeasible decoding order */
    SWSC_ERR_INVALID = 4,    /* bad handle or argument */
} swsc_status;

typedef struct swsc_channel swsc_channel;
typedef struct swsc_region swsc_region;

const char* swsc_last_error(void);
void swsc_string_free(char* text);

/* Caps the worker threads used by sweeps and simulations (0 = hardware). */
void swsc_set_jobs(int jobs);

/* -------- channels ------------------------------------------------------ */

swsc_status swsc_channel_from_json(const char* json_text, swsc_channel** out);
swsc_status swsc_channel_from_file(const char* path, swsc_channel** out);
void swsc_channel_free(swsc_channel* ch);

/* Layer masks address the channel's base layering: for a Gaussian channel
 * the bit layers of each sender's symbol map, senders concatenated; for a
 * discrete channel one layer per sender. */
swsc_status swsc_mutual_info(const swsc_channel* ch, uint32_t target_mask,
                             uint32_t cond_mask, int receiver, double* bits);

/* -------- rate regions --------------------------------------------------- */

/* scheme: ian | ian-subst | scd | snd | sd1 | sd2 | rs | swsc | swsc-union.
 * order_spec ("d1=m1@-1>m2@0;d2=m1@-1>m2@-1") applies to rs/swsc; NULL picks
 * a default. alpha/alpha2 parameterize the erasure-family splits where the
 * scheme uses one; grid sizes the swsc-union sweep. */
swsc_status swsc_region_compute(const swsc_channel* ch, const char* scheme,
                                const char* order_spec, double alpha,
                                double alpha2, int grid, swsc_region** out);

/* Common/private-message auxiliary region projected to (R1, R2); discrete
 * channels with 4-ary inputs only. lambda1 in 1..6, lambda2 in 7..12. */
swsc_status swsc_region_hk(const swsc_channel* ch, int lambda1, int lambda2,
                           double alpha_prime, double alpha_dblprime, double beta,
                           double gamma, swsc_region** out);

/* Finite-block rate discount (rectangle regions only): stream rates scale by
 * (blocks - layers + 1) / blocks. */
swsc_status swsc_region_edge_loss(const swsc_region* region, int blocks,
                                  int k_layers, int l_layers, swsc_region** out);

swsc_status swsc_region_boundary_csv(const swsc_region* region, int resolution,
                                     char** out_csv);
swsc_status swsc_region_constraints_json(const swsc_region* region, char** out_json);
/* 1 if (r1, r2) lies in the region within slack, else 0. */
int swsc_region_contains(const swsc_region* region, double r1, double r2,
                         double slack);
swsc_status swsc_region_max_symmetric(const swsc_region* region, double* rate);
void swsc_region_free(swsc_region* region);

/* -------- verification suites -------------------------------------------- */

/* suite: lemma1 | eq5 | fm | prop1 | prop2 | thm2 | thm3.
 * Returns SWSC_OK when the suite passes, SWSC_ERR_FAILURE when it ran but
 * found violations; out_report (optional) receives a one-line summary. */
swsc_status swsc_verify(const char* suite, char** out_report);

/* -------- link simulation ------------------------------------------------ */

swsc_status swsc_schedule_dump(int k_layers, int l_layers, int blocks,
                               char** out_text);

/* scheme: "swsc" or "ian"; config is the simulation JSON document. */
swsc_status swsc_simulate(const char* config_json, const char* scheme,
                          char** out_report_json);

/* Theoretical symmetric-rate curves (CSV) at fixed SNR over a list of INRs. */
swsc_status swsc_curve_csv(double snr_db, const double* inr_db, size_t inr_count,
                           const char* map1, const char* map2, char** out_csv);

/* Simulated symmetric-rate sweep (CSV) over INR and rate grids. */
swsc_status swsc_sim_sweep_csv(const char* config_json, const double* inr_db,
                               size_t inr_count, const double* rates,
                               size_t rate_count, int include_ian, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* SWSC_H */
