/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "core/gfun.hpp"

using dmtlab::AntennaConfig;
using dmtlab::g_closed;

namespace {
const AntennaConfig k11{1, 1};
const AntennaConfig k22{2, 2};
const AntennaConfig k32{3, 2};
}  // namespace

TEST_CASE("g_closed anchor and interpolation values") {
    CHECK(g_closed(k22, 0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(g_closed(k22, 0.5, 1.0) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(g_closed(k22, 1.0, 2.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(g_closed(k22, 2.0, 1.0) == 0.0);
    CHECK(g_closed(k11, 1.0, 1.0) == 0.0);
    CHECK(g_closed(k32, 4.0, 2.0) == 0.0);
}

TEST_CASE("g_closed hits every anchor point exactly") {
    for (const auto& cfg : {k11, k22, k32, AntennaConfig{4, 3}}) {
        for (double p : {0.5, 1.0, 2.0, 5.0}) {
            for (int k = 0; k <= cfg.min_dim(); ++k) {
                const double expected = p * (cfg.tx - k) * (cfg.rx - k);
                CHECK(g_closed(cfg, k * p, p) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("g_closed scaling identity") {
    for (const auto& cfg : {k11, k22, k32, AntennaConfig{1, 4}}) {
        for (double p : {0.5, 1.0, 2.0, 5.0}) {
            const double r_hi = p * cfg.min_dim();
            for (int i = 0; i <= 40; ++i) {
                const double r = r_hi * i / 40.0;
                const double lhs = g_closed(cfg, r, p);
                const double rhs = p * g_closed(cfg, r / p, 1.0);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("g_closed is non-increasing and convex in r") {
    for (const auto& cfg : {k22, k32, AntennaConfig{3, 3}}) {
        const double p = 1.5;
        const double r_hi = p * cfg.min_dim();
        std::vector<double> values;
        const int grid = 200;
        for (int i = 0; i <= grid; ++i) {
            values.push_back(g_closed(cfg, r_hi * i / grid, p));
        }
        for (int i = 1; i <= grid; ++i) {
            CHECK(values[i] <= values[i - 1] + 1e-12);
        }
        for (int i = 1; i < grid; ++i) {
            const double second = values[i - 1] - 2.0 * values[i] + values[i + 1];
            CHECK(second >= -1e-9);
        }
    }
}

TEST_CASE("g_closed rejects arguments outside its domain") {
    CHECK_THROWS_AS(g_closed(k22, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(g_closed(k22, 0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(g_closed(k22, -0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(g_closed(k22, 2.0 + 1e-9, 1.0), std::domain_error);
    CHECK_THROWS_AS(g_closed(AntennaConfig{0, 1}, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("effective_multiplexing scales rate by the overhead factor") {
    using dmtlab::effective_multiplexing;
    using dmtlab::OverheadConfig;
    CHECK(effective_multiplexing(k22, 0.5, {100, 0}) == doctest::Approx(0.5));
    CHECK(effective_multiplexing(k22, 0.5, {100, 20}) == doctest::Approx(0.625));
    CHECK_THROWS_AS(effective_multiplexing(k22, 1.8, {10, 5}), std::domain_error);
    CHECK_THROWS_AS(effective_multiplexing(k22, 0.5, {4, 1}), std::domain_error);
    CHECK_THROWS_AS(effective_multiplexing(k22, 0.5, {0, 0}), std::invalid_argument);
}
