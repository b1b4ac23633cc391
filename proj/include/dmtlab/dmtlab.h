/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

/*
 * C interface to the diversity-multiplexing tradeoff library.
 *
 * Conventions:
 *  - every fallible call returns a dmtlab_status and writes results through
 *    out pointers, which are touched only on DMTLAB_OK;
 *  - dmtlab_last_error() describes the most recent failure on the calling
 *    thread;
 *  - cases and protocols are addressed by their kebab-case names, e.g.
 *    "csir-hat-tq" or "perfect-quantized"; `levels` is the feedback level
 *    count K and is ignored by cases/protocols that do not use one.
 */
#ifndef DMTLAB_DMTLAB_H
#define DMTLAB_DMTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DMTLAB_API __declspec(dllexport)
#else
#define DMTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmtlab_status {
    DMTLAB_OK = 0,
    DMTLAB_ERR_DOMAIN = 1,            /* argument outside its mathematical domain */
    DMTLAB_ERR_INVALID_ARG = 2,       /* malformed argument (name, count, pointer) */
    DMTLAB_ERR_UNSUPPORTED_CASE = 3,  /* finite curve requested for an unbounded case */
    DMTLAB_ERR_SIZE = 4,              /* request exceeds a hard size limit */
    DMTLAB_ERR_INSUFFICIENT_DATA = 5, /* not enough usable points for a fit */
    DMTLAB_ERR_INTERNAL = 6
} dmtlab_status;

DMTLAB_API const char* dmtlab_version(void);

/* Message for the latest failure on this thread; empty string if none. */
DMTLAB_API const char* dmtlab_last_error(void);

/* ---- case metadata ---- */

DMTLAB_API size_t dmtlab_case_count(void);
DMTLAB_API const char* dmtlab_case_name(size_t index); /* NULL when out of range */
DMTLAB_API dmtlab_status dmtlab_case_characteristic(const char* case_name, const char** out);
DMTLAB_API dmtlab_status dmtlab_case_uses_levels(const char* case_name, int* out);

/* ---- pointwise tradeoff values ---- */

DMTLAB_API dmtlab_status dmtlab_g_closed(int m, int n, double r, double p, double* out);
DMTLAB_API dmtlab_status dmtlab_g_oracle(int m, int n, double r, double p, int grid_points,
                                         double* out);
DMTLAB_API dmtlab_status dmtlab_b_star(int m, int n, double r, int levels, double* out);
DMTLAB_API dmtlab_status dmtlab_d_noisy_quantized(int m, int n, double r, int levels,
                                                  double* out);
DMTLAB_API dmtlab_status dmtlab_d_noisy_oracle(int m, int n, double r, int levels,
                                               int grid_points, double* out);
DMTLAB_API dmtlab_status dmtlab_effective_multiplexing(int m, int n, double r,
                                                       int block_length, int training_slots,
                                                       double* out);

/* Diversity of a named case at one multiplexing gain. For the unbounded
 * cases *out_unbounded is set to 1 and *out_value to +infinity. */
DMTLAB_API dmtlab_status dmtlab_d_case(const char* case_name, int m, int n, int levels,
                                       double r, double* out_value, int* out_unbounded);

/* ---- exact tradeoff curves ---- */

typedef struct dmtlab_curve dmtlab_curve;

/* resolution <= 0 selects the default dense-trace grid (2001 points). */
DMTLAB_API dmtlab_status dmtlab_curve_create(const char* case_name, int m, int n, int levels,
                                             int resolution, dmtlab_curve** out);
DMTLAB_API void dmtlab_curve_destroy(dmtlab_curve* curve);
DMTLAB_API size_t dmtlab_curve_breakpoint_count(const dmtlab_curve* curve);
/* Copies up to capacity breakpoints into rs/ds; fails with
 * DMTLAB_ERR_SIZE when capacity is too small. */
DMTLAB_API dmtlab_status dmtlab_curve_breakpoints(const dmtlab_curve* curve, double* rs,
                                                  double* ds, size_t capacity);
DMTLAB_API dmtlab_status dmtlab_curve_eval(const dmtlab_curve* curve, double r, double* out);

/* ---- Monte Carlo outage estimation ---- */

typedef struct dmtlab_sim_spec {
    const char* protocol; /* "no-feedback-csir", "perfect-quantized",
                             "noisy-quantized-fdd", "tdd-noisy-training" */
    int m;
    int n;
    int levels;
    double r;
    double snr_db;
    uint64_t trials;
    uint64_t seed;
    int workers; /* <= 0 means 1 */
} dmtlab_sim_spec;

typedef struct dmtlab_sim_result {
    double outage_probability;
    double ci_low;  /* 95% Clopper-Pearson bounds */
    double ci_high;
    uint64_t trials;
    uint64_t outage_count;
    double mean_power_ratio; /* mean data power / linear snr */
} dmtlab_sim_result;

DMTLAB_API dmtlab_status dmtlab_estimate_outage(const dmtlab_sim_spec* spec,
                                                dmtlab_sim_result* out);

/* ---- diversity slope fit ----
 *
 * Fits -slope of log10(outage) vs log10(snr) over the points whose outage
 * count reaches the usability threshold (50); needs at least 3 such points.
 */
DMTLAB_API dmtlab_status dmtlab_fit_diversity(const double* snr_db,
                                              const double* outage_probability,
                                              const uint64_t* outage_count, size_t point_count,
                                              double* out_diversity, double* out_standard_error,
                                              size_t* out_points_used);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DMTLAB_DMTLAB_H */
