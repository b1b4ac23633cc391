/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sim/montecarlo.hpp"

namespace dmtlab {

struct SweepPoint {
    double snr_db = 0.0;
    OutageEstimate estimate;
};

struct SlopeFit {
    double diversity_estimate = 0.0;
    double standard_error = 0.0;
    // (snr_db, outage probability) of the points that entered the regression.
    std::vector<std::pair<double, double>> points;
};

/// Points with fewer outage events than this are excluded from slope fits;
/// their relative error would dominate the regression.
inline constexpr std::uint64_t kMinOutageCountForFit = 50;

/// Least-squares slope of log10(outage) against log10(snr); the diversity
/// estimate is the negated slope. Throws InsufficientDataError unless at
/// least 3 points survive the outage-count filter.
SlopeFit fit_diversity(const std::vector<SweepPoint>& sweep);

}  // namespace dmtlab
