/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/cases.hpp"

#include <stdexcept>

#include "core/feedback.hpp"
#include "core/gfun.hpp"

namespace dmtlab {

const char* FeedbackCase::name() const {
    switch (kind) {
        case CaseKind::Csir: return "csir";
        case CaseKind::CsirHat: return "csir-hat";
        case CaseKind::CsirTq: return "csir-tq";
        case CaseKind::CsirHatTq: return "csir-hat-tq";
        case CaseKind::CsirTqHat: return "csir-tq-hat";
        case CaseKind::CsirHatTqHat: return "csir-hat-tq-hat";
        case CaseKind::CsirTc: return "csir-tc";
        case CaseKind::CsirHatTc: return "csir-hat-tc";
        case CaseKind::CsirTcHat: return "csir-tc-hat";
        case CaseKind::CsirHatTcHat: return "csir-hat-tc-hat";
    }
    throw std::invalid_argument("unknown case kind");
}

FeedbackCase FeedbackCase::from_name(const std::string& name, int levels) {
    static constexpr CaseKind kKinds[] = {
        CaseKind::Csir,       CaseKind::CsirHat,      CaseKind::CsirTq,
        CaseKind::CsirHatTq,  CaseKind::CsirTqHat,    CaseKind::CsirHatTqHat,
        CaseKind::CsirTc,     CaseKind::CsirHatTc,    CaseKind::CsirTcHat,
        CaseKind::CsirHatTcHat,
    };
    for (CaseKind kind : kKinds) {
        FeedbackCase candidate{kind, 0};
        if (name == candidate.name()) {
            candidate.levels = candidate.uses_levels() ? levels : 0;
            candidate.validate();
            return candidate;
        }
    }
    throw std::invalid_argument("unknown case name: " + name);
}

const char* case_characteristic(CaseKind kind) {
    switch (kind) {
        case CaseKind::Csir:
            return "perfect CSI at receiver, none at transmitter";
        case CaseKind::CsirHat:
            return "no information at transmitter or receiver";
        case CaseKind::CsirTq:
            return "perfect quantized CSI at transmitter, perfect CSI at receiver";
        case CaseKind::CsirHatTq:
            return "perfect quantized CSI at transmitter";
        case CaseKind::CsirTqHat:
            return "noisy quantized CSI at transmitter, perfect CSI at receiver";
        case CaseKind::CsirHatTqHat:
            return "no genie-aided information, quantized feedback";
        case CaseKind::CsirTc:
            return "noise-free training channel to transmitter, perfect CSI at receiver";
        case CaseKind::CsirHatTc:
            return "noiseless channel to transmitter";
        case CaseKind::CsirTcHat:
            return "noisy channel to transmitter, perfect CSI at receiver";
        case CaseKind::CsirHatTcHat:
            return "no genie-aided information, symmetric two-way channel";
    }
    throw std::invalid_argument("unknown case kind");
}

std::array<FeedbackCase, 10> all_cases(int levels) {
    return {
        FeedbackCase{CaseKind::Csir, 0},
        FeedbackCase{CaseKind::CsirHat, 0},
        FeedbackCase{CaseKind::CsirTq, levels},
        FeedbackCase{CaseKind::CsirHatTq, levels},
        FeedbackCase{CaseKind::CsirTqHat, levels},
        FeedbackCase{CaseKind::CsirHatTqHat, levels},
        FeedbackCase{CaseKind::CsirTc, 0},
        FeedbackCase{CaseKind::CsirHatTc, 0},
        FeedbackCase{CaseKind::CsirTcHat, 0},
        FeedbackCase{CaseKind::CsirHatTcHat, 0},
    };
}

DiversityValue d_case(const FeedbackCase& fb_case, const AntennaConfig& antennas, double r) {
    fb_case.validate();
    antennas.validate();
    if (r < 0.0 || r >= antennas.min_dim()) {
        throw std::domain_error("multiplexing gain must lie in [0, min(m,n))");
    }
    const double mn = static_cast<double>(antennas.product());
    switch (fb_case.kind) {
        case CaseKind::Csir:
        case CaseKind::CsirHat:
            return DiversityValue::finite(g_closed(antennas, r, 1.0));
        case CaseKind::CsirTq:
            return DiversityValue::finite(b_star(antennas, r, fb_case.levels));
        case CaseKind::CsirHatTq:
        case CaseKind::CsirHatTqHat:
            return DiversityValue::finite(
                g_closed(antennas, r, 1.0 + g_closed(antennas, r, 1.0)));
        case CaseKind::CsirTqHat:
            return DiversityValue::finite(d_noisy_quantized(antennas, r, fb_case.levels));
        case CaseKind::CsirTc:
        case CaseKind::CsirHatTc:
        case CaseKind::CsirTcHat:
            return DiversityValue::infinite();
        case CaseKind::CsirHatTcHat:
            return DiversityValue::finite(mn + g_closed(antennas, r, mn));
    }
    throw std::invalid_argument("unknown case kind");
}

}  // namespace dmtlab
