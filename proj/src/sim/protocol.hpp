/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/types.hpp"
#include "sim/rng.hpp"

namespace dmtlab {

enum class ProtocolKind {
    NoFeedbackCsir,     // one-shot transmission at SNR^1
    PerfectQuantized,   // K-level power control, error-free index delivery
    NoisyQuantizedFdd,  // K-level power control over an independent noisy channel
    TddNoisyTraining,   // K-level power control signalled by reciprocal training
};

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::NoFeedbackCsir;
    int levels = 1;  // K

    bool uses_levels() const { return kind != ProtocolKind::NoFeedbackCsir; }
    int min_levels() const {
        switch (kind) {
            case ProtocolKind::NoFeedbackCsir: return 1;
            case ProtocolKind::NoisyQuantizedFdd: return 2;
            default: return 1;
        }
    }
    void validate() const;
    const char* name() const;
    static ProtocolSpec from_name(const std::string& name, int levels);
};

/// log2 det(I + (power/tx)*H*H'), equal power per transmit antenna, in bits.
double mutual_information_bits(const Eigen::MatrixXcd& h, double power, int tx_count);

/// True iff the channel cannot carry rate r*log2(snr) at power snr^power_exponent.
bool outage_event(const Eigen::MatrixXcd& h, double power_exponent, double r, double snr,
                  int tx_count);

/// Data power exponents available to the transmitter: 1 + B_j(r), j = 0..K-1.
std::vector<double> power_ladder(const AntennaConfig& antennas, double r, int levels);

/// Smallest ladder index that avoids outage; top index if none does.
int select_feedback_index(const Eigen::MatrixXcd& h, const std::vector<double>& ladder,
                          double r, double snr, int tx_count);

/// One use of the noisy feedback channel: level j_true is sent at power
/// snr^exponents[j_true] through hf, and the estimated level is read back by
/// thresholding the received energy at exponent midpoints (zero energy maps
/// to level 0).
int noisy_feedback_decode(int j_true, const std::vector<double>& exponents,
                          const Eigen::MatrixXcd& hf, double snr, RandomStream& rng);

/// Per-(protocol, antennas, r, snr) constants reused across trials.
struct TrialContext {
    ProtocolSpec protocol;
    AntennaConfig antennas;
    double r = 0.0;
    double snr = 0.0;
    std::vector<double> ladder;              // data power exponents
    std::vector<double> feedback_exponents;  // FDD feedback powers (q profile)

    static TrialContext make(const ProtocolSpec& protocol, const AntennaConfig& antennas,
                             double r, double snr);
};

struct TrialOutcome {
    bool outage = false;
    double data_power = 0.0;  // linear data transmit power spent this block
};

/// One fading block end to end: channel draw, feedback rounds, data slot.
TrialOutcome run_protocol_trial(const TrialContext& ctx, RandomStream& rng);

}  // namespace dmtlab
