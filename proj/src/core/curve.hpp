/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "core/types.hpp"

namespace dmtlab {

struct CurvePoint {
    double r = 0.0;
    double d = 0.0;
};

/// Exact breakpoint representation of a tradeoff curve d(r) on [r_lo, r_hi).
/// The breakpoint list always includes a final point at r_hi carrying the
/// one-sided limit value; evaluation is linear interpolation.
class PiecewiseLinearCurve {
public:
    PiecewiseLinearCurve() = default;
    explicit PiecewiseLinearCurve(std::vector<CurvePoint> points);

    double eval(double r) const;  // accepts the closed interval [r_lo, r_hi]
    double domain_lo() const { return points_.front().r; }
    double domain_hi() const { return points_.back().r; }
    const std::vector<CurvePoint>& breakpoints() const { return points_; }

    /// Drop interior breakpoints that are collinear with their neighbours.
    void simplify(double tolerance = 5e-12);

private:
    std::vector<CurvePoint> points_;
};

/// Exact tradeoff curve of a finite case over r in [0, min(m,n)).
///
/// Compositions G(r, p(r)) with piecewise-linear p are expanded exactly by
/// propagating breakpoints (segment kinks of p plus the crossings r = k*p(r)).
/// The noisy-quantized case is traced on a dense r grid with kink refinement;
/// `resolution` controls that grid (0 picks the default of 2001 points).
///
/// Throws UnsupportedCaseError for cases with unbounded diversity.
PiecewiseLinearCurve tradeoff_curve(const FeedbackCase& fb_case,
                                    const AntennaConfig& antennas, int resolution = 0);

namespace detail {
// r -> G(r, p(r)) for a piecewise-linear power exponent curve p.
PiecewiseLinearCurve compose_g(const AntennaConfig& antennas,
                               const PiecewiseLinearCurve& power);
PiecewiseLinearCurve constant_curve(double value, double r_lo, double r_hi);
PiecewiseLinearCurve shift_curve(const PiecewiseLinearCurve& curve, double offset);
}  // namespace detail

}  // namespace dmtlab
