/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sim/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "core/feedback.hpp"

namespace dmtlab {

void ProtocolSpec::validate() const {
    const int floor_levels = uses_levels() ? min_levels() : 1;
    const int effective = uses_levels() ? levels : 1;
    if (effective < floor_levels) {
        throw std::invalid_argument(std::string("protocol ") + name() + " requires at least " +
                                    std::to_string(floor_levels) + " power levels");
    }
}

const char* ProtocolSpec::name() const {
    switch (kind) {
        case ProtocolKind::NoFeedbackCsir: return "no-feedback-csir";
        case ProtocolKind::PerfectQuantized: return "perfect-quantized";
        case ProtocolKind::NoisyQuantizedFdd: return "noisy-quantized-fdd";
        case ProtocolKind::TddNoisyTraining: return "tdd-noisy-training";
    }
    throw std::invalid_argument("unknown protocol kind");
}

ProtocolSpec ProtocolSpec::from_name(const std::string& name, int levels) {
    for (ProtocolKind kind :
         {ProtocolKind::NoFeedbackCsir, ProtocolKind::PerfectQuantized,
          ProtocolKind::NoisyQuantizedFdd, ProtocolKind::TddNoisyTraining}) {
        ProtocolSpec candidate{kind, 1};
        if (name == candidate.name()) {
            candidate.levels = candidate.uses_levels() ? levels : 1;
            candidate.validate();
            return candidate;
        }
    }
    throw std::invalid_argument("unknown protocol name: " + name);
}

double mutual_information_bits(const Eigen::MatrixXcd& h, double power, int tx_count) {
    if (power <= 0.0) throw std::domain_error("transmit power must be positive");
    const double scale = power / static_cast<double>(tx_count);
    if (h.rows() == 1 && h.cols() == 1) {
        return std::log2(1.0 + scale * std::norm(h(0, 0)));
    }
    // det(I + c*H*H') via the Gram matrix on the smaller side.
    Eigen::MatrixXcd gram;
    if (h.rows() <= h.cols()) {
        gram = Eigen::MatrixXcd::Identity(h.rows(), h.rows()) + scale * (h * h.adjoint());
    } else {
        gram = Eigen::MatrixXcd::Identity(h.cols(), h.cols()) + scale * (h.adjoint() * h);
    }
    const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    double log_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        log_det += std::log(l(i, i).real());
    }
    return 2.0 * log_det / std::numbers::ln2;
}

bool outage_event(const Eigen::MatrixXcd& h, double power_exponent, double r, double snr,
                  int tx_count) {
    if (snr <= 1.0) throw std::domain_error("snr must exceed 1 in linear scale");
    const double rate_bits = r * std::log2(snr);
    return mutual_information_bits(h, std::pow(snr, power_exponent), tx_count) < rate_bits;
}

std::vector<double> power_ladder(const AntennaConfig& antennas, double r, int levels) {
    if (levels < 1) throw std::domain_error("power ladder needs at least one level");
    std::vector<double> ladder(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j) {
        ladder[static_cast<std::size_t>(j)] = 1.0 + b_star(antennas, r, j);
    }
    return ladder;
}

int select_feedback_index(const Eigen::MatrixXcd& h, const std::vector<double>& ladder,
                          double r, double snr, int tx_count) {
    if (ladder.empty()) throw std::invalid_argument("empty power ladder");
    const int top = static_cast<int>(ladder.size()) - 1;
    for (int j = 0; j < top; ++j) {
        if (!outage_event(h, ladder[static_cast<std::size_t>(j)], r, snr, tx_count)) return j;
    }
    return top;
}

namespace {

// Received-energy threshold decoding at exponent midpoints in log-snr scale.
int decode_energy_level(double energy, const std::vector<double>& exponents, double snr) {
    if (!(energy > 0.0)) return 0;
    const double observed = std::log(energy) / std::log(snr);
    int level = 0;
    for (std::size_t k = 0; k + 1 < exponents.size(); ++k) {
        const double midpoint = 0.5 * (exponents[k] + exponents[k + 1]);
        if (observed > midpoint) level = static_cast<int>(k) + 1;
    }
    return level;
}

Eigen::VectorXcd noise_vector(Eigen::Index size, RandomStream& rng) {
    Eigen::VectorXcd w(size);
    for (Eigen::Index i = 0; i < size; ++i) w(i) = rng.complex_gaussian();
    return w;
}

}  // namespace

int noisy_feedback_decode(int j_true, const std::vector<double>& exponents,
                          const Eigen::MatrixXcd& hf, double snr, RandomStream& rng) {
    if (exponents.empty() || j_true < 0 || j_true >= static_cast<int>(exponents.size())) {
        throw std::invalid_argument("feedback level out of range");
    }
    const double amplitude =
        std::sqrt(std::pow(snr, exponents[static_cast<std::size_t>(j_true)]));
    const Eigen::VectorXcd received =
        hf.col(0) * amplitude + noise_vector(hf.rows(), rng);
    return decode_energy_level(received.squaredNorm(), exponents, snr);
}

TrialContext TrialContext::make(const ProtocolSpec& protocol, const AntennaConfig& antennas,
                                double r, double snr) {
    protocol.validate();
    antennas.validate();
    if (snr <= 1.0) throw std::domain_error("snr must exceed 1 in linear scale");
    TrialContext ctx;
    ctx.protocol = protocol;
    ctx.antennas = antennas;
    ctx.r = r;
    ctx.snr = snr;
    const int levels = protocol.uses_levels() ? protocol.levels : 1;
    ctx.ladder = power_ladder(antennas, r, levels);
    if (protocol.kind == ProtocolKind::NoisyQuantizedFdd) {
        ctx.feedback_exponents = solve_noisy_quantized(antennas, r, levels).feedback_exponents;
    }
    return ctx;
}

namespace {

// Reciprocal-channel training round: the receiver beamforms one training
// symbol along the top eigenvector of H*H' at power snr^(alpha_min + (j+1)/2K),
// where alpha_min is the decay exponent of the largest eigenvalue; the
// transmitter thresholds the energy it receives through the reciprocal
// channel, which concentrates at exponent (j+1)/2K.
int tdd_training_round(const Eigen::MatrixXcd& h, int j_true, int levels, double snr,
                       RandomStream& rng) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h * h.adjoint());
    const Eigen::Index top = eig.eigenvalues().size() - 1;
    const double lambda_max = eig.eigenvalues()(top);
    const Eigen::VectorXcd direction = eig.eigenvectors().col(top);

    std::vector<double> exponents(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
        exponents[static_cast<std::size_t>(i)] =
            static_cast<double>(i + 1) / (2.0 * levels);
    }
    if (!(lambda_max > 0.0)) {
        // Degenerate zero channel: nothing arrives, decode lowest level.
        return 0;
    }
    const double alpha_min = -std::log(lambda_max) / std::log(snr);
    const double power =
        std::pow(snr, alpha_min + exponents[static_cast<std::size_t>(j_true)]);
    const Eigen::VectorXcd received =
        h.adjoint() * (direction * std::sqrt(power)) + noise_vector(h.cols(), rng);
    return decode_energy_level(received.squaredNorm(), exponents, snr);
}

}  // namespace

TrialOutcome run_protocol_trial(const TrialContext& ctx, RandomStream& rng) {
    const Eigen::MatrixXcd h = sample_channel(ctx.antennas, rng);
    const int tx = ctx.antennas.tx;

    int used_level = 0;
    switch (ctx.protocol.kind) {
        case ProtocolKind::NoFeedbackCsir:
            used_level = 0;
            break;
        case ProtocolKind::PerfectQuantized:
            used_level = select_feedback_index(h, ctx.ladder, ctx.r, ctx.snr, tx);
            break;
        case ProtocolKind::NoisyQuantizedFdd: {
            const int j_true = select_feedback_index(h, ctx.ladder, ctx.r, ctx.snr, tx);
            const AntennaConfig reverse{ctx.antennas.rx, ctx.antennas.tx};
            const Eigen::MatrixXcd hf = sample_channel(reverse, rng);
            used_level = noisy_feedback_decode(j_true, ctx.feedback_exponents, hf, ctx.snr, rng);
            break;
        }
        case ProtocolKind::TddNoisyTraining: {
            const int j_true = select_feedback_index(h, ctx.ladder, ctx.r, ctx.snr, tx);
            used_level =
                tdd_training_round(h, j_true, static_cast<int>(ctx.ladder.size()), ctx.snr, rng);
            break;
        }
    }

    const double exponent = ctx.ladder[static_cast<std::size_t>(used_level)];
    TrialOutcome outcome;
    outcome.outage = outage_event(h, exponent, ctx.r, ctx.snr, tx);
    outcome.data_power = std::pow(ctx.snr, exponent);
    return outcome;
}

}  // namespace dmtlab
