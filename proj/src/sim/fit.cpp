/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sim/fit.hpp"

#include <cmath>
#include <cstddef>

namespace dmtlab {

SlopeFit fit_diversity(const std::vector<SweepPoint>& sweep) {
    SlopeFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const SweepPoint& point : sweep) {
        if (point.estimate.outage_count < kMinOutageCountForFit) continue;
        xs.push_back(point.snr_db / 10.0);  // log10 of linear snr
        ys.push_back(std::log10(point.estimate.outage_probability));
        fit.points.emplace_back(point.snr_db, point.estimate.outage_probability);
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw InsufficientDataError(
            "slope fit needs at least 3 points with enough outage events");
    }

    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    }
    const double slope = sxy / sxx;
    const double intercept = y_mean - slope * x_mean;

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double residual = ys[i] - (intercept + slope * xs[i]);
        sse += residual * residual;
    }
    fit.diversity_estimate = -slope;
    fit.standard_error = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    return fit;
}

}  // namespace dmtlab
