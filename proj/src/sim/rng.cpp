/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sim/rng.hpp"

#include <cmath>
#include <numbers>

namespace dmtlab {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream_index) {
    // splitmix64 finalizer over distinct offsets of the golden-ratio stride.
    std::uint64_t z = seed + (stream_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::complex<double> RandomStream::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

Eigen::MatrixXcd sample_channel(const AntennaConfig& antennas, RandomStream& rng) {
    antennas.validate();
    Eigen::MatrixXcd h(antennas.rx, antennas.tx);
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            h(i, j) = rng.complex_gaussian();
        }
    }
    return h;
}

}  // namespace dmtlab
