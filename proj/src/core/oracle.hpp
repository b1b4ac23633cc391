/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "core/types.hpp"

namespace dmtlab {

/// Brute-force reference for g_closed: minimizes the eigenvalue-exponent
/// objective sum_i (2i-1+max(m,n)-min(m,n))*alpha_i over ordered vectors
/// alpha_1 >= ... >= alpha_min >= 0 on a uniform grid of [0,p]^min(m,n),
/// subject to sum_i (p-alpha_i)^+ <= r.
///
/// Always an upper bound on g_closed; within p*min(m,n)*(m+n)/grid_points.
double g_oracle(const AntennaConfig& antennas, double r, double p, int grid_points);

/// Brute-force reference for d_noisy_quantized: exhaustive grid over each
/// feedback exponent q_j in [0, 1+b_star(r,j)]. Lower-bounds the exact
/// max-min; within mn*max_j(1+b_star(r,j))/(grid_points-1) of it.
///
/// The grid is exponential in K; only K in {2,3,4} is accepted.
double d_noisy_oracle(const AntennaConfig& antennas, double r, int levels,
                      int grid_points);

}  // namespace dmtlab
