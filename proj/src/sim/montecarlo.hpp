/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <utility>

#include "core/types.hpp"
#include "sim/protocol.hpp"

namespace dmtlab {

struct TrialConfig {
    AntennaConfig antennas;
    double r = 0.0;
    double snr_db = 0.0;
    ProtocolSpec protocol;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct OutageEstimate {
    double outage_probability = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t trials = 0;
    std::uint64_t outage_count = 0;
    double mean_power_ratio = 0.0;  // mean data power / snr
};

/// Exact (Clopper-Pearson) 95% binomial confidence interval.
std::pair<double, double> clopper_pearson(std::uint64_t count, std::uint64_t trials,
                                          double confidence = 0.95);

/// Monte Carlo outage estimate over tc.trials independent fading blocks.
///
/// Trials are split into fixed-size chunks, each driven by a stream seeded
/// from (tc.seed, chunk index); chunk results are reduced in index order, so
/// the estimate is bit-identical for any worker count.
OutageEstimate estimate_outage(const TrialConfig& tc, int workers = 1);

}  // namespace dmtlab
