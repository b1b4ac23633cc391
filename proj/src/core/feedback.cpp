/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/gfun.hpp"

namespace dmtlab {

namespace {

void check_multiplexing_open(const AntennaConfig& antennas, double r) {
    if (!(r >= 0.0) || !(r < antennas.min_dim()))
        throw std::domain_error("multiplexing gain outside [0, min(m,n))");
}

void check_multiplexing_closed(const AntennaConfig& antennas, double r) {
    if (!(r >= 0.0) || !(r <= antennas.min_dim()))
        throw std::domain_error("multiplexing gain outside [0, min(m,n)]");
}

double b_star_impl(const AntennaConfig& antennas, double r, int levels) {
    double b = 0.0;
    for (int k = 0; k < levels; ++k) b = g_closed(antennas, r, 1.0 + b);
    return b;
}

NoisyQuantizedSolution solve_noisy_impl(const AntennaConfig& antennas, double r,
                                        int levels) {
    const double mn = antennas.product();

    // b[i] = perfect-feedback value with i levels, i = 1..K.
    std::vector<double> b(levels + 1, 0.0);
    for (int i = 1; i <= levels; ++i) b[i] = g_closed(antennas, r, 1.0 + b[i - 1]);

    // Breakdown point of the greedy feasibility pass.
    double t_max = std::numeric_limits<double>::infinity();
    double suffix = 0.0;  // sum of b[j..i] while j descends at fixed i
    for (int i = 1; i <= levels - 1; ++i) {
        suffix = 0.0;
        for (int j = i; j >= 1; --j) {
            suffix += b[j];
            const double cand = (mn * (1.0 + b[i]) + suffix) / (i - j + 1);
            t_max = std::min(t_max, cand);
        }
    }

    NoisyQuantizedSolution sol;
    sol.diversity = std::min(b[levels], t_max);

    // Greedy minimal exponent profile achieving the optimum.
    sol.feedback_exponents.assign(levels, 0.0);
    double u = 0.0;
    for (int i = 1; i <= levels - 1; ++i) {
        u = std::max(0.0, u + (sol.diversity - b[i]) / mn);
        u = std::min(u, 1.0 + b[i]);  // numerical guard; cap holds by construction
        sol.feedback_exponents[i] = u;
    }
    return sol;
}

}  // namespace

double b_star(const AntennaConfig& antennas, double r, int levels) {
    antennas.validate();
    if (levels < 0) throw std::invalid_argument("feedback level count must be >= 0");
    check_multiplexing_open(antennas, r);
    return b_star_impl(antennas, r, levels);
}

NoisyQuantizedSolution solve_noisy_quantized(const AntennaConfig& antennas, double r,
                                             int levels) {
    antennas.validate();
    if (levels < 2) throw std::domain_error("noisy quantized feedback requires K >= 2");
    check_multiplexing_open(antennas, r);
    return solve_noisy_impl(antennas, r, levels);
}

double d_noisy_quantized(const AntennaConfig& antennas, double r, int levels) {
    return solve_noisy_quantized(antennas, r, levels).diversity;
}

namespace detail {

double b_star_closed(const AntennaConfig& antennas, double r, int levels) {
    antennas.validate();
    if (levels < 0) throw std::invalid_argument("feedback level count must be >= 0");
    check_multiplexing_closed(antennas, r);
    return b_star_impl(antennas, r, levels);
}

NoisyQuantizedSolution solve_noisy_quantized_closed(const AntennaConfig& antennas,
                                                    double r, int levels) {
    antennas.validate();
    if (levels < 2) throw std::domain_error("noisy quantized feedback requires K >= 2");
    check_multiplexing_closed(antennas, r);
    return solve_noisy_impl(antennas, r, levels);
}

}  // namespace detail

}  // namespace dmtlab
