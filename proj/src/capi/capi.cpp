/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "dmtlab/dmtlab.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/cases.hpp"
#include "core/curve.hpp"
#include "core/feedback.hpp"
#include "core/gfun.hpp"
#include "core/oracle.hpp"
#include "core/types.hpp"
#include "sim/fit.hpp"
#include "sim/montecarlo.hpp"

namespace {

thread_local std::string t_last_error;

dmtlab_status fail(dmtlab_status code, const char* message) {
    t_last_error = message;
    return code;
}

template <typename Fn>
dmtlab_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return DMTLAB_OK;
    } catch (const dmtlab::UnsupportedCaseError& e) {
        return fail(DMTLAB_ERR_UNSUPPORTED_CASE, e.what());
    } catch (const dmtlab::InsufficientDataError& e) {
        return fail(DMTLAB_ERR_INSUFFICIENT_DATA, e.what());
    } catch (const std::domain_error& e) {
        return fail(DMTLAB_ERR_DOMAIN, e.what());
    } catch (const std::length_error& e) {
        return fail(DMTLAB_ERR_SIZE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DMTLAB_ERR_INVALID_ARG, e.what());
    } catch (const std::exception& e) {
        return fail(DMTLAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DMTLAB_ERR_INTERNAL, "unknown error");
    }
}

dmtlab_status require(bool ok, const char* message) {
    return ok ? DMTLAB_OK : fail(DMTLAB_ERR_INVALID_ARG, message);
}

}  // namespace

struct dmtlab_curve {
    dmtlab::PiecewiseLinearCurve curve;
};

extern "C" {

const char* dmtlab_version(void) { return DMTLAB_VERSION_STRING; }

const char* dmtlab_last_error(void) { return t_last_error.c_str(); }

size_t dmtlab_case_count(void) { return 10; }

const char* dmtlab_case_name(size_t index) {
    if (index >= 10) return nullptr;
    return dmtlab::all_cases(2)[index].name();
}

dmtlab_status dmtlab_case_characteristic(const char* case_name, const char** out) {
    if (auto bad = require(case_name && out, "null argument")) return bad;
    return guarded([&] {
        const auto fb = dmtlab::FeedbackCase::from_name(case_name, 2);
        *out = dmtlab::case_characteristic(fb.kind);
    });
}

dmtlab_status dmtlab_case_uses_levels(const char* case_name, int* out) {
    if (auto bad = require(case_name && out, "null argument")) return bad;
    return guarded([&] {
        const auto fb = dmtlab::FeedbackCase::from_name(case_name, 2);
        *out = fb.uses_levels() ? 1 : 0;
    });
}

dmtlab_status dmtlab_g_closed(int m, int n, double r, double p, double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::g_closed(cfg, r, p);
    });
}

dmtlab_status dmtlab_g_oracle(int m, int n, double r, double p, int grid_points, double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::g_oracle(cfg, r, p, grid_points);
    });
}

dmtlab_status dmtlab_b_star(int m, int n, double r, int levels, double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::b_star(cfg, r, levels);
    });
}

dmtlab_status dmtlab_d_noisy_quantized(int m, int n, double r, int levels, double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::d_noisy_quantized(cfg, r, levels);
    });
}

dmtlab_status dmtlab_d_noisy_oracle(int m, int n, double r, int levels, int grid_points,
                                    double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::d_noisy_oracle(cfg, r, levels, grid_points);
    });
}

dmtlab_status dmtlab_effective_multiplexing(int m, int n, double r, int block_length,
                                            int training_slots, double* out) {
    if (auto bad = require(out != nullptr, "null out pointer")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        *out = dmtlab::effective_multiplexing(cfg, r,
                                              dmtlab::OverheadConfig{block_length, training_slots});
    });
}

dmtlab_status dmtlab_d_case(const char* case_name, int m, int n, int levels, double r,
                            double* out_value, int* out_unbounded) {
    if (auto bad = require(case_name && out_value && out_unbounded, "null argument")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        const auto fb = dmtlab::FeedbackCase::from_name(case_name, levels);
        const auto value = dmtlab::d_case(fb, cfg, r);
        *out_value = value.value;
        *out_unbounded = value.unbounded ? 1 : 0;
    });
}

dmtlab_status dmtlab_curve_create(const char* case_name, int m, int n, int levels,
                                  int resolution, dmtlab_curve** out) {
    if (auto bad = require(case_name && out, "null argument")) return bad;
    return guarded([&] {
        const dmtlab::AntennaConfig cfg{m, n};
        cfg.validate();
        const auto fb = dmtlab::FeedbackCase::from_name(case_name, levels);
        auto curve = dmtlab::tradeoff_curve(fb, cfg, resolution <= 0 ? 0 : resolution);
        *out = new dmtlab_curve{std::move(curve)};
    });
}

void dmtlab_curve_destroy(dmtlab_curve* curve) { delete curve; }

size_t dmtlab_curve_breakpoint_count(const dmtlab_curve* curve) {
    return curve ? curve->curve.breakpoints().size() : 0;
}

dmtlab_status dmtlab_curve_breakpoints(const dmtlab_curve* curve, double* rs, double* ds,
                                       size_t capacity) {
    if (auto bad = require(curve && rs && ds, "null argument")) return bad;
    const auto& pts = curve->curve.breakpoints();
    if (capacity < pts.size()) {
        return fail(DMTLAB_ERR_SIZE, "breakpoint buffer too small");
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        rs[i] = pts[i].r;
        ds[i] = pts[i].d;
    }
    t_last_error.clear();
    return DMTLAB_OK;
}

dmtlab_status dmtlab_curve_eval(const dmtlab_curve* curve, double r, double* out) {
    if (auto bad = require(curve && out, "null argument")) return bad;
    return guarded([&] { *out = curve->curve.eval(r); });
}

dmtlab_status dmtlab_estimate_outage(const dmtlab_sim_spec* spec, dmtlab_sim_result* out) {
    if (auto bad = require(spec && out && spec->protocol, "null argument")) return bad;
    return guarded([&] {
        dmtlab::TrialConfig tc;
        tc.antennas = dmtlab::AntennaConfig{spec->m, spec->n};
        tc.r = spec->r;
        tc.snr_db = spec->snr_db;
        tc.protocol = dmtlab::ProtocolSpec::from_name(spec->protocol, spec->levels);
        tc.trials = spec->trials;
        tc.seed = spec->seed;
        const int workers = spec->workers <= 0 ? 1 : spec->workers;
        const auto estimate = dmtlab::estimate_outage(tc, workers);
        out->outage_probability = estimate.outage_probability;
        out->ci_low = estimate.ci_low;
        out->ci_high = estimate.ci_high;
        out->trials = estimate.trials;
        out->outage_count = estimate.outage_count;
        out->mean_power_ratio = estimate.mean_power_ratio;
    });
}

dmtlab_status dmtlab_fit_diversity(const double* snr_db, const double* outage_probability,
                                   const uint64_t* outage_count, size_t point_count,
                                   double* out_diversity, double* out_standard_error,
                                   size_t* out_points_used) {
    if (auto bad = require(snr_db && outage_probability && outage_count && out_diversity &&
                               out_standard_error && out_points_used,
                           "null argument")) {
        return bad;
    }
    return guarded([&] {
        std::vector<dmtlab::SweepPoint> sweep(point_count);
        for (size_t i = 0; i < point_count; ++i) {
            sweep[i].snr_db = snr_db[i];
            sweep[i].estimate.outage_probability = outage_probability[i];
            sweep[i].estimate.outage_count = outage_count[i];
        }
        const auto fit = dmtlab::fit_diversity(sweep);
        *out_diversity = fit.diversity_estimate;
        *out_standard_error = fit.standard_error;
        *out_points_used = fit.points.size();
    });
}

}  // extern "C"
