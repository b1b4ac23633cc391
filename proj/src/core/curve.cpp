/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "core/feedback.hpp"
#include "core/gfun.hpp"

namespace dmtlab {

namespace {

constexpr int kDefaultResolution = 2001;
constexpr int kMinResolution = 33;

double interpolate(const CurvePoint& a, const CurvePoint& b, double r) {
    if (b.r == a.r) return a.d;
    const double t = (r - a.r) / (b.r - a.r);
    return a.d + t * (b.d - a.d);
}

}  // namespace

PiecewiseLinearCurve::PiecewiseLinearCurve(std::vector<CurvePoint> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("curve needs at least two breakpoints");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].r > points_[i - 1].r)) {
            throw std::invalid_argument("curve breakpoints must be strictly increasing in r");
        }
    }
}

double PiecewiseLinearCurve::eval(double r) const {
    const double lo = points_.front().r;
    const double hi = points_.back().r;
    const double slack = 1e-12 * (1.0 + hi - lo);
    if (r < lo - slack || r > hi + slack) {
        throw std::domain_error("curve evaluated outside its domain");
    }
    r = std::clamp(r, lo, hi);
    auto it = std::upper_bound(points_.begin(), points_.end(), r,
                               [](double value, const CurvePoint& pt) { return value < pt.r; });
    if (it == points_.begin()) return points_.front().d;
    if (it == points_.end()) return points_.back().d;
    return interpolate(*(it - 1), *it, r);
}

void PiecewiseLinearCurve::simplify(double tolerance) {
    if (points_.size() < 3) return;
    std::vector<CurvePoint> kept;
    kept.reserve(points_.size());
    kept.push_back(points_.front());
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
        const CurvePoint& anchor = kept.back();
        const CurvePoint& mid = points_[i];
        const CurvePoint& next = points_[i + 1];
        const double predicted = interpolate(anchor, next, mid.r);
        if (std::abs(predicted - mid.d) > tolerance * (1.0 + std::abs(mid.d))) {
            kept.push_back(mid);
        }
    }
    kept.push_back(points_.back());
    points_ = std::move(kept);
}

namespace detail {

PiecewiseLinearCurve constant_curve(double value, double r_lo, double r_hi) {
    return PiecewiseLinearCurve({{r_lo, value}, {r_hi, value}});
}

PiecewiseLinearCurve shift_curve(const PiecewiseLinearCurve& curve, double offset) {
    std::vector<CurvePoint> pts = curve.breakpoints();
    for (auto& pt : pts) pt.d += offset;
    return PiecewiseLinearCurve(std::move(pts));
}

PiecewiseLinearCurve compose_g(const AntennaConfig& antennas,
                               const PiecewiseLinearCurve& power) {
    antennas.validate();
    const auto& ppts = power.breakpoints();
    const double span = power.domain_hi() - power.domain_lo();
    const double merge_eps = 1e-13 * (1.0 + span);

    std::vector<CurvePoint> out;
    auto push = [&](double r, double p) {
        if (!out.empty() && r - out.back().r <= merge_eps) return;
        out.push_back({r, g_closed(antennas, r, p)});
    };

    const int nmin = antennas.min_dim();
    for (std::size_t seg = 0; seg + 1 < ppts.size(); ++seg) {
        const double r0 = ppts[seg].r;
        const double r1 = ppts[seg + 1].r;
        const double p0 = ppts[seg].d;
        const double p1 = ppts[seg + 1].d;
        const double b = (p1 - p0) / (r1 - r0);
        const double a = p0 - b * r0;
        if (a <= 0.0) {
            throw std::domain_error("power exponent segment must have a positive intercept");
        }
        push(r0, p0);
        // Slope changes of G(r, a + b*r) happen where r crosses k*(a + b*r),
        // i.e. at r = k*a / (1 - k*b) for integer k.
        const int k_start = static_cast<int>(std::floor(r0 / p0 + 1e-12)) + 1;
        for (int k = std::max(1, k_start); k <= nmin - 1; ++k) {
            const double denom = 1.0 - k * b;
            if (denom <= 0.0) break;
            const double r_cross = k * a / denom;
            if (r_cross <= r0 + merge_eps) continue;
            if (r_cross >= r1 - merge_eps) break;
            push(r_cross, a + b * r_cross);
        }
    }
    push(power.domain_hi(), ppts.back().d);

    PiecewiseLinearCurve curve(std::move(out));
    curve.simplify();
    return curve;
}

}  // namespace detail

namespace {

PiecewiseLinearCurve b_star_curve(const AntennaConfig& antennas, int levels) {
    const double r_hi = static_cast<double>(antennas.min_dim());
    PiecewiseLinearCurve curve =
        detail::compose_g(antennas, detail::constant_curve(1.0, 0.0, r_hi));
    for (int round = 2; round <= levels; ++round) {
        curve = detail::compose_g(antennas, detail::shift_curve(curve, 1.0));
    }
    return curve;
}

PiecewiseLinearCurve noisy_quantized_curve(const AntennaConfig& antennas, int levels,
                                           int resolution) {
    const double r_hi = static_cast<double>(antennas.min_dim());
    int grid = std::max(resolution, kMinResolution);

    for (int attempt = 0; attempt < 3; ++attempt, grid = grid * 4 - 3) {
        const int last = grid - 1;
        std::vector<double> values(static_cast<std::size_t>(grid));
        std::vector<double> rs(static_cast<std::size_t>(grid));
        for (int i = 0; i < grid; ++i) {
            rs[i] = r_hi * static_cast<double>(i) / static_cast<double>(last);
            values[i] = detail::solve_noisy_quantized_closed(antennas, rs[i], levels).diversity;
        }
        const double h = r_hi / static_cast<double>(last);

        // Interior nodes whose second difference is non-zero sit next to a kink.
        std::vector<bool> flagged(static_cast<std::size_t>(grid), false);
        const double scale = 1.0 + std::abs(values.front());
        for (int i = 1; i < last; ++i) {
            const double second = values[i - 1] - 2.0 * values[i] + values[i + 1];
            flagged[i] = std::abs(second) > 1e-9 * scale;
        }

        std::vector<CurvePoint> pts;
        pts.push_back({rs[0], values[0]});
        bool degraded = false;
        int i = 1;
        while (i < last) {
            if (!flagged[i]) {
                pts.push_back({rs[i], values[i]});
                ++i;
                continue;
            }
            int j = i;
            while (j + 1 < last && (flagged[j + 1] || (j + 2 < last && flagged[j + 2]))) ++j;
            // Refine the kink as the intersection of the straight lines fitted
            // just outside the flagged run.
            const bool room = (i - 2 >= 0) && (j + 2 <= last);
            bool placed = false;
            if (room) {
                const double s1 = (values[i - 1] - values[i - 2]) / h;
                const double s2 = (values[j + 2] - values[j + 1]) / h;
                const double c1 = values[i - 1] - s1 * rs[i - 1];
                const double c2 = values[j + 1] - s2 * rs[j + 1];
                if (std::abs(s1 - s2) > 1e-9) {
                    const double r_kink = (c2 - c1) / (s1 - s2);
                    if (r_kink > rs[i - 1] - 1e-9 && r_kink < rs[j + 1] + 1e-9) {
                        const double d_kink = c1 + s1 * r_kink;
                        if (r_kink > pts.back().r + 1e-12) {
                            pts.push_back({r_kink, d_kink});
                        }
                        placed = true;
                    }
                }
            }
            if (!placed) {
                degraded = true;
                for (int k = i; k <= j; ++k) pts.push_back({rs[k], values[k]});
            }
            i = j + 1;
        }
        pts.push_back({rs[last], values[last]});

        PiecewiseLinearCurve curve(std::move(pts));
        curve.simplify();

        double worst = 0.0;
        for (int k = 0; k < grid; ++k) {
            worst = std::max(worst, std::abs(curve.eval(rs[k]) - values[k]));
        }
        if (worst <= 1e-9 && !degraded) return curve;
        if (worst <= 1e-9 && attempt == 2) return curve;
    }

    // Refinement kept missing; fall back to the raw dense trace, which agrees
    // with the pointwise solver at every grid node by construction.
    const int last = grid - 1;
    std::vector<CurvePoint> pts(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double r = r_hi * static_cast<double>(i) / static_cast<double>(last);
        pts[i] = {r, detail::solve_noisy_quantized_closed(antennas, r, levels).diversity};
    }
    PiecewiseLinearCurve curve(std::move(pts));
    curve.simplify();
    return curve;
}

}  // namespace

PiecewiseLinearCurve tradeoff_curve(const FeedbackCase& fb_case, const AntennaConfig& antennas,
                                    int resolution) {
    fb_case.validate();
    antennas.validate();
    if (fb_case.is_unbounded()) {
        throw UnsupportedCaseError("diversity is unbounded for this case; no finite curve exists");
    }
    if (resolution == 0) resolution = kDefaultResolution;
    if (resolution < 2) {
        throw std::invalid_argument("curve resolution must be at least 2");
    }

    const double r_hi = static_cast<double>(antennas.min_dim());
    const double mn = static_cast<double>(antennas.product());
    switch (fb_case.kind) {
        case CaseKind::Csir:
        case CaseKind::CsirHat:
            return b_star_curve(antennas, 1);
        case CaseKind::CsirTq:
            return b_star_curve(antennas, fb_case.levels);
        case CaseKind::CsirHatTq:
        case CaseKind::CsirHatTqHat:
            return b_star_curve(antennas, 2);
        case CaseKind::CsirTqHat:
            return noisy_quantized_curve(antennas, fb_case.levels, resolution);
        case CaseKind::CsirHatTcHat: {
            PiecewiseLinearCurve base =
                detail::compose_g(antennas, detail::constant_curve(mn, 0.0, r_hi));
            return detail::shift_curve(base, mn);
        }
        default:
            throw UnsupportedCaseError("diversity is unbounded for this case; no finite curve exists");
    }
}

}  // namespace dmtlab
