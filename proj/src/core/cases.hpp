/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <array>

#include "core/types.hpp"

namespace dmtlab {

/// Diversity order of a feedback case at multiplexing gain r in [0, min(m,n)).
DiversityValue d_case(const FeedbackCase& fb_case, const AntennaConfig& antennas, double r);

/// Short description of what distinguishes the case.
const char* case_characteristic(CaseKind kind);

/// The ten cases in canonical order, with `levels` filled in where it applies.
std::array<FeedbackCase, 10> all_cases(int levels);

}  // namespace dmtlab
