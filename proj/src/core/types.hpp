/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dmtlab {

/// Transmit/receive antenna counts shared by every tradeoff formula.
struct AntennaConfig {
    int tx = 1;  // m
    int rx = 1;  // n

    int min_dim() const { return tx < rx ? tx : rx; }
    int max_dim() const { return tx > rx ? tx : rx; }
    int product() const { return tx * rx; }

    void validate() const {
        if (tx < 1 || rx < 1)
            throw std::invalid_argument("antenna counts must be >= 1");
    }
};

/// A finite nonnegative diversity order or the distinguished unbounded value.
struct DiversityValue {
    double value = 0.0;
    bool unbounded = false;

    static DiversityValue finite(double v) { return {v, false}; }
    static DiversityValue infinite() { return {std::numeric_limits<double>::infinity(), true}; }
};

enum class CaseKind {
    Csir,
    CsirHat,
    CsirTq,
    CsirHatTq,
    CsirTqHat,
    CsirHatTqHat,
    CsirTc,
    CsirHatTc,
    CsirTcHat,
    CsirHatTcHat,
};

/// One of the ten knowledge/feedback scenarios, carrying the number of
/// feedback power levels K where applicable.
struct FeedbackCase {
    CaseKind kind = CaseKind::Csir;
    int levels = 0;  // K; meaningful only when uses_levels()

    bool uses_levels() const {
        switch (kind) {
            case CaseKind::CsirTq:
            case CaseKind::CsirHatTq:
            case CaseKind::CsirTqHat:
            case CaseKind::CsirHatTqHat:
                return true;
            default:
                return false;
        }
    }

    // K=1 means no feedback, so the estimated/noisy variants require K >= 2.
    int min_levels() const {
        if (!uses_levels()) return 0;
        return kind == CaseKind::CsirTq ? 1 : 2;
    }

    bool is_unbounded() const {
        return kind == CaseKind::CsirTc || kind == CaseKind::CsirHatTc ||
               kind == CaseKind::CsirTcHat;
    }

    void validate() const {
        if (uses_levels() && levels < min_levels())
            throw std::invalid_argument("feedback case " + std::string(name()) +
                                        " requires at least " + std::to_string(min_levels()) +
                                        " power levels");
    }

    const char* name() const;
    static FeedbackCase from_name(const std::string& name, int levels);
};

/// Fading-block length and the training/feedback timeslots spent per block.
struct OverheadConfig {
    int block_length = 0;    // L channel uses per fading block
    int training_slots = 0;  // tau
};

/// Raised when an exact tradeoff curve is requested for an unbounded case.
struct UnsupportedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a slope fit has fewer than the required usable points.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dmtlab
