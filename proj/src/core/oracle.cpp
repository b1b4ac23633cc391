/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/feedback.hpp"

namespace dmtlab {

namespace {

// Recursive enumeration of ordered alpha vectors over the grid, carrying the
// running objective and constraint sums. cap is the grid index of the level
// above, enforcing alpha_1 >= ... >= alpha_d.
void enumerate_alpha(int level, int depth, int cap, double step, double p, double budget,
                     const std::vector<double>& coeff, double partial_obj,
                     double partial_cons, double& best) {
    const double slack = 1e-12 * (1.0 + budget);
    for (int idx = 0; idx <= cap; ++idx) {
        const double a = idx * step;
        const double obj = partial_obj + coeff[level] * a;
        const double cons = partial_cons + std::max(p - a, 0.0);
        if (level + 1 == depth) {
            if (cons <= budget + slack && obj < best) best = obj;
        } else {
            enumerate_alpha(level + 1, depth, idx, step, p, budget, coeff, obj, cons,
                            best);
        }
    }
}

}  // namespace

double g_oracle(const AntennaConfig& antennas, double r, double p, int grid_points) {
    antennas.validate();
    if (!(p > 0.0)) throw std::domain_error("power exponent p must be positive");
    const int nmin = antennas.min_dim();
    if (!(r >= 0.0) || !(r <= p * nmin))
        throw std::domain_error("multiplexing gain outside [0, p*min(m,n)]");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");

    std::vector<double> coeff(nmin);
    for (int i = 0; i < nmin; ++i)
        coeff[i] = 2 * (i + 1) - 1 + antennas.max_dim() - nmin;

    const double step = p / (grid_points - 1);
    double best = std::numeric_limits<double>::infinity();
    enumerate_alpha(0, nmin, grid_points - 1, step, p, r, coeff, 0.0, 0.0, best);
    return best;
}

double d_noisy_oracle(const AntennaConfig& antennas, double r, int levels,
                      int grid_points) {
    antennas.validate();
    if (levels < 2) throw std::domain_error("noisy quantized feedback requires K >= 2");
    if (levels > 4)
        throw std::length_error("exhaustive feedback-exponent grid supports K <= 4");
    if (grid_points < 11) throw std::invalid_argument("grid_points must be >= 11");
    if (!(r >= 0.0) || !(r < antennas.min_dim()))
        throw std::domain_error("multiplexing gain outside [0, min(m,n))");

    const double mn = antennas.product();
    std::vector<double> b(levels + 1, 0.0);
    for (int i = 1; i <= levels; ++i) b[i] = b_star(antennas, r, i);

    const int dims = levels - 1;
    std::vector<double> cap(dims), step(dims);
    for (int j = 0; j < dims; ++j) {
        cap[j] = 1.0 + b[j + 1];
        step[j] = cap[j] / (grid_points - 1);
    }

    // Walk the full grid with an odometer; all grid values are >= 0, so the
    // positive-part clamps in the objective are identities here.
    std::vector<int> idx(dims, 0);
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        double worst = std::numeric_limits<double>::infinity();
        double prev_q = 0.0;
        for (int i = 0; i < dims; ++i) {
            const double q = idx[i] * step[i];
            worst = std::min(worst, mn * (q - prev_q) + b[i + 1]);
            prev_q = q;
        }
        if (worst > best) best = worst;

        int d = 0;
        while (d < dims && ++idx[d] == grid_points) idx[d++] = 0;
        if (d == dims) break;
    }
    return std::min(b[levels], best);
}

}  // namespace dmtlab
