/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "core/types.hpp"

namespace dmtlab {

/// Derive an independent stream seed from (seed, stream index). Statistically
/// decorrelated even for consecutive indices or seed 0.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream_index);

/// Deterministic random source for one simulation stream.
///
/// The Gaussian transform is implemented here (Box-Muller) instead of using
/// std::normal_distribution, whose output sequence is not pinned by the
/// standard; identical seeds must give identical trials on any toolchain.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();   // [0, 1), 53-bit resolution
    double gaussian();  // standard normal

    // Circularly-symmetric complex normal, zero mean, unit variance.
    std::complex<double> complex_gaussian();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// i.i.d. CN(0,1) forward channel, rx x tx, filled row-major.
Eigen::MatrixXcd sample_channel(const AntennaConfig& antennas, RandomStream& rng);

}  // namespace dmtlab
