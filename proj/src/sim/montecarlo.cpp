/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sim/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/distributions/beta.hpp>

namespace dmtlab {

namespace {

constexpr std::uint64_t kChunkTrials = 16384;

struct ChunkResult {
    std::uint64_t outages = 0;
    double power_sum = 0.0;
};

ChunkResult run_chunk(const TrialContext& ctx, std::uint64_t seed, std::uint64_t chunk_index,
                      std::uint64_t trial_count) {
    RandomStream rng(split_seed(seed, chunk_index));
    ChunkResult result;
    for (std::uint64_t t = 0; t < trial_count; ++t) {
        const TrialOutcome outcome = run_protocol_trial(ctx, rng);
        result.outages += outcome.outage ? 1 : 0;
        result.power_sum += outcome.data_power;
    }
    return result;
}

}  // namespace

void TrialConfig::validate() const {
    antennas.validate();
    protocol.validate();
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
    if (r < 0.0 || r >= antennas.min_dim()) {
        throw std::domain_error("multiplexing gain must lie in [0, min(m,n))");
    }
}

std::pair<double, double> clopper_pearson(std::uint64_t count, std::uint64_t trials,
                                          double confidence) {
    if (trials == 0 || count > trials) throw std::invalid_argument("bad binomial counts");
    if (confidence <= 0.0 || confidence >= 1.0) {
        throw std::invalid_argument("confidence must lie in (0,1)");
    }
    const double alpha = 1.0 - confidence;
    const double n = static_cast<double>(trials);
    const double k = static_cast<double>(count);
    double lo = 0.0;
    double hi = 1.0;
    if (count > 0) {
        const boost::math::beta_distribution<double> lower(k, n - k + 1.0);
        lo = boost::math::quantile(lower, alpha / 2.0);
    }
    if (count < trials) {
        const boost::math::beta_distribution<double> upper(k + 1.0, n - k);
        hi = boost::math::quantile(upper, 1.0 - alpha / 2.0);
    }
    return {lo, hi};
}

OutageEstimate estimate_outage(const TrialConfig& tc, int workers) {
    tc.validate();
    if (workers < 1) throw std::invalid_argument("worker count must be positive");

    const double snr = std::pow(10.0, tc.snr_db / 10.0);
    const TrialContext ctx = TrialContext::make(tc.protocol, tc.antennas, tc.r, snr);

    const std::uint64_t chunk_count = (tc.trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkResult> chunks(chunk_count);

    auto chunk_trials = [&](std::uint64_t index) {
        const std::uint64_t begin = index * kChunkTrials;
        return std::min(kChunkTrials, tc.trials - begin);
    };

    if (workers == 1 || chunk_count == 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) {
            chunks[c] = run_chunk(ctx, tc.seed, c, chunk_trials(c));
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto drain = [&] {
            for (std::uint64_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) {
                chunks[c] = run_chunk(ctx, tc.seed, c, chunk_trials(c));
            }
        };
        std::vector<std::thread> pool;
        const std::uint64_t spawn =
            std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), chunk_count);
        pool.reserve(spawn);
        for (std::uint64_t w = 0; w < spawn; ++w) pool.emplace_back(drain);
        for (auto& thread : pool) thread.join();
    }

    // Index-ordered reduction keeps the floating-point sum independent of the
    // worker schedule.
    std::uint64_t outages = 0;
    double power_sum = 0.0;
    for (const ChunkResult& chunk : chunks) {
        outages += chunk.outages;
        power_sum += chunk.power_sum;
    }

    OutageEstimate estimate;
    estimate.trials = tc.trials;
    estimate.outage_count = outages;
    estimate.outage_probability =
        static_cast<double>(outages) / static_cast<double>(tc.trials);
    const auto ci = clopper_pearson(outages, tc.trials);
    estimate.ci_low = ci.first;
    estimate.ci_high = ci.second;
    estimate.mean_power_ratio = power_sum / static_cast<double>(tc.trials) / snr;
    return estimate;
}

}  // namespace dmtlab
