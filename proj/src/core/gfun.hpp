/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "core/types.hpp"

namespace dmtlab {

/// Baseline diversity-multiplexing tradeoff of a coherent no-feedback link
/// whose transmit power scales as SNR^p: the piecewise-linear curve through
/// the anchor points (k*p, p*(m-k)*(n-k)) for k = 0..min(m,n).
///
/// Domain: p > 0 and 0 <= r <= p*min(m,n); throws std::domain_error outside.
double g_closed(const AntennaConfig& antennas, double r, double p);

/// Rate exponent after discounting training/feedback overhead: r*L/(L-tau).
/// Requires L - tau >= m + n and the scaled value below min(m,n).
double effective_multiplexing(const AntennaConfig& antennas, double r,
                              const OverheadConfig& overhead);

}  // namespace dmtlab
