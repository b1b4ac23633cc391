/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/gfun.hpp"

#include <cmath>

namespace dmtlab {

double g_closed(const AntennaConfig& antennas, double r, double p) {
    antennas.validate();
    if (!(p > 0.0)) throw std::domain_error("power exponent p must be positive");
    const int nmin = antennas.min_dim();
    const double r_max = p * nmin;
    if (!(r >= 0.0) || !(r <= r_max))
        throw std::domain_error("multiplexing gain outside [0, p*min(m,n)]");

    int k = static_cast<int>(std::floor(r / p));
    if (k > nmin - 1) k = nmin - 1;  // right endpoint lands on the last segment
    const double m = antennas.tx, n = antennas.rx;
    const double d = p * (m - k) * (n - k) - (r - k * p) * (m + n - 2 * k - 1);
    return d < 0.0 ? 0.0 : d;
}

double effective_multiplexing(const AntennaConfig& antennas, double r,
                              const OverheadConfig& overhead) {
    antennas.validate();
    if (overhead.block_length < 1 || overhead.training_slots < 0)
        throw std::invalid_argument("block length must be >= 1 and slots >= 0");
    const int usable = overhead.block_length - overhead.training_slots;
    if (usable < antennas.tx + antennas.rx)
        throw std::domain_error("L - tau must be at least m + n");
    if (!(r >= 0.0)) throw std::domain_error("multiplexing gain must be nonnegative");
    const double scaled =
        r * static_cast<double>(overhead.block_length) / static_cast<double>(usable);
    if (!(scaled < antennas.min_dim()))
        throw std::domain_error("overhead-adjusted multiplexing gain reaches min(m,n)");
    return scaled;
}

}  // namespace dmtlab
