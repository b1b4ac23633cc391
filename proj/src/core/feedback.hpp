/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "core/types.hpp"

namespace dmtlab {

/// Tradeoff with K levels of perfect power-controlled quantized feedback,
/// built by iterating the no-feedback curve: level K uses power exponent
/// 1 + (value at K-1 levels), starting from 0 at K = 0.
///
/// Nondecreasing in K; equals g_closed(r, 1) at K = 1.
/// Domain: K >= 0 and 0 <= r < min(m,n).
double b_star(const AntennaConfig& antennas, double r, int levels);

/// Outcome of the noisy-quantized-feedback max-min optimization.
struct NoisyQuantizedSolution {
    double diversity = 0.0;
    // Feedback power exponents per level, index 0..K-1; entry 0 is fixed at 0.
    std::vector<double> feedback_exponents;
};

/// Tradeoff with K levels of noisy power-controlled feedback at a receiver
/// with perfect channel knowledge: min of the perfect-feedback value and the
/// max over feedback exponent assignments of the worst per-level protection
/// term mn*(q_i - q_{i-1}) + B_i(r).
///
/// The inner max-min is solved exactly: the greedy feasibility test for a
/// target t ("each level needs q_i >= q_{i-1} + (t - B_i)/mn, capped at
/// 1 + B_i") is monotone in t, and its breakdown point has the closed form
///   t* = min over 1 <= j <= i <= K-1 of
///        (mn*(1 + B_i) + sum_{l=j..i} B_l) / (i - j + 1).
///
/// Domain: K >= 2 and 0 <= r < min(m,n).
NoisyQuantizedSolution solve_noisy_quantized(const AntennaConfig& antennas, double r,
                                             int levels);

/// Diversity value of solve_noisy_quantized.
double d_noisy_quantized(const AntennaConfig& antennas, double r, int levels);

namespace detail {
// Closed-domain variants (r may equal min(m,n)); used by curve extraction
// where the right endpoint carries the limit value.
double b_star_closed(const AntennaConfig& antennas, double r, int levels);
NoisyQuantizedSolution solve_noisy_quantized_closed(const AntennaConfig& antennas,
                                                    double r, int levels);
}  // namespace detail

}  // namespace dmtlab
