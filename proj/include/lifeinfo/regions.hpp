#pragma once

// The four quadrant conditioning events at inspection times (s,t), their
// probabilities, conditional joint/marginal densities, and the
// integration domains the entropy/MI quadratures run over. Residual axes
// work in age-shifted coordinates: for the all-survived region the
// conditional density at (x,y) is f(x+s, y+t) / Fbar(s,t).

#include <cmath>
#include <functional>
#include <string>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/quadrature.hpp"

namespace lifeinfo {

enum class RegionKind { past_past, residual_residual, past_residual, residual_past };

inline const char* region_name(RegionKind k) {
    switch (k) {
        case RegionKind::past_past: return "past_past";
        case RegionKind::residual_residual: return "residual_residual";
        case RegionKind::past_residual: return "past_residual";
        case RegionKind::residual_past: return "residual_past";
    }
    return "?";
}

struct ConditioningRegion {
    RegionKind kind = RegionKind::residual_residual;
    double s = 0.0;
    double t = 0.0;
};

inline double region_probability(const BivariateLifetimeModel& m,
                                 const ConditioningRegion& r) {
    switch (r.kind) {
        case RegionKind::past_past: return m.cdf(r.s, r.t);
        case RegionKind::residual_residual: return m.survival(r.s, r.t);
        case RegionKind::past_residual: return m.prob_past_residual(r.s, r.t);
        case RegionKind::residual_past: return m.prob_residual_past(r.s, r.t);
    }
    return 0.0;
}

inline double require_region_probability(const BivariateLifetimeModel& m,
                                         const ConditioningRegion& r,
                                         double floor = 1e-300) {
    const double p = region_probability(m, r);
    if (!(p > floor))
        throw ZeroRegionProbability(std::string("region ") + region_name(r.kind) + " at (" +
                                    std::to_string(r.s) + "," + std::to_string(r.t) +
                                    ") has probability " + std::to_string(p));
    return p;
}

/// Conditional joint density at (x,y); residual axes take age-shifted
/// arguments. Zero outside the region domain.
inline double conditional_density(const BivariateLifetimeModel& m,
                                  const ConditioningRegion& r, double x, double y) {
    const double p = require_region_probability(m, r);
    switch (r.kind) {
        case RegionKind::past_past:
            if (x < 0.0 || x > r.s || y < 0.0 || y > r.t) return 0.0;
            return m.pdf(x, y) / p;
        case RegionKind::residual_residual:
            if (x < 0.0 || y < 0.0) return 0.0;
            return m.pdf(x + r.s, y + r.t) / p;
        case RegionKind::past_residual:
            if (x < 0.0 || x > r.s || y < 0.0) return 0.0;
            return m.pdf(x, y + r.t) / p;
        case RegionKind::residual_past:
            if (x < 0.0 || y < 0.0 || y > r.t) return 0.0;
            return m.pdf(x + r.s, y) / p;
    }
    return 0.0;
}

namespace detail {

// Unnormalized conditional marginal densities (the region probability is
// divided out by the callers that need it). Arguments are in the same
// shifted coordinates as conditional_density.
inline double raw_marginal_x(const BivariateLifetimeModel& m, const ConditioningRegion& r,
                             double x) {
    switch (r.kind) {
        case RegionKind::past_past:
            return (x < 0.0 || x > r.s) ? 0.0 : m.lower_section_x(x, r.t);
        case RegionKind::residual_residual:
            return x < 0.0 ? 0.0 : m.upper_section_x(x + r.s, r.t);
        case RegionKind::past_residual:
            return (x < 0.0 || x > r.s) ? 0.0 : m.upper_section_x(x, r.t);
        case RegionKind::residual_past:
            return x < 0.0 ? 0.0 : m.lower_section_x(x + r.s, r.t);
    }
    return 0.0;
}

inline double raw_marginal_y(const BivariateLifetimeModel& m, const ConditioningRegion& r,
                             double y) {
    switch (r.kind) {
        case RegionKind::past_past:
            return (y < 0.0 || y > r.t) ? 0.0 : m.lower_section_y(y, r.s);
        case RegionKind::residual_residual:
            return y < 0.0 ? 0.0 : m.upper_section_y(y + r.t, r.s);
        case RegionKind::past_residual:
            return y < 0.0 ? 0.0 : m.lower_section_y(y + r.t, r.s);
        case RegionKind::residual_past:
            return (y < 0.0 || y > r.t) ? 0.0 : m.upper_section_y(y, r.s);
    }
    return 0.0;
}

} // namespace detail

/// Conditional marginal density of the region's X coordinate (shifted for
/// residual axes), normalized by the region probability.
inline double conditional_marginal_x(const BivariateLifetimeModel& m,
                                     const ConditioningRegion& r, double x) {
    return detail::raw_marginal_x(m, r, x) / require_region_probability(m, r);
}

inline double conditional_marginal_y(const BivariateLifetimeModel& m,
                                     const ConditioningRegion& r, double y) {
    return detail::raw_marginal_y(m, r, y) / require_region_probability(m, r);
}

/// Conditional marginal survival of the shifted X coordinate, exact via
/// the joint CDF/survival; used for tail cutoffs and sampling envelopes.
inline double conditional_marginal_tail_x(const BivariateLifetimeModel& m,
                                          const ConditioningRegion& r, double x,
                                          double region_prob) {
    switch (r.kind) {
        case RegionKind::past_past:
            return 1.0 - m.cdf(std::min(x, r.s), r.t) / region_prob;
        case RegionKind::residual_residual:
            return m.survival(x + r.s, r.t) / region_prob;
        case RegionKind::past_residual: {
            const double num = m.marginal_cdf_x(std::min(x, r.s)) - m.cdf(std::min(x, r.s), r.t);
            return 1.0 - std::max(0.0, num) / region_prob;
        }
        case RegionKind::residual_past: {
            const double num = m.marginal_cdf_y(r.t) - m.cdf(x + r.s, r.t);
            return std::max(0.0, num) / region_prob;
        }
    }
    return 0.0;
}

inline double conditional_marginal_tail_y(const BivariateLifetimeModel& m,
                                          const ConditioningRegion& r, double y,
                                          double region_prob) {
    switch (r.kind) {
        case RegionKind::past_past:
            return 1.0 - m.cdf(r.s, std::min(y, r.t)) / region_prob;
        case RegionKind::residual_residual:
            return m.survival(r.s, y + r.t) / region_prob;
        case RegionKind::residual_past: {
            const double num = m.marginal_cdf_y(std::min(y, r.t)) - m.cdf(r.s, std::min(y, r.t));
            return 1.0 - std::max(0.0, num) / region_prob;
        }
        case RegionKind::past_residual: {
            const double num = m.marginal_cdf_x(r.s) - m.cdf(r.s, y + r.t);
            return std::max(0.0, num) / region_prob;
        }
    }
    return 0.0;
}

/// Smallest x with conditional tail probability <= eps, by doubling then
/// bisection. Finite even when the support is unbounded.
inline double region_cutoff_x(const BivariateLifetimeModel& m, const ConditioningRegion& r,
                              double eps = 1e-9) {
    const double p = require_region_probability(m, r);
    const bool past_axis =
        r.kind == RegionKind::past_past || r.kind == RegionKind::past_residual;
    if (past_axis) return r.s;
    const double hard = std::isfinite(m.support.x_max) ? m.support.x_max - r.s : kInf;
    double hi = 1.0;
    if (std::isfinite(hard)) {
        hi = hard;
    } else {
        while (conditional_marginal_tail_x(m, r, hi, p) > eps && hi < 1e300) hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 120 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (conditional_marginal_tail_x(m, r, mid, p) > eps ? lo : hi) = mid;
    }
    return hi;
}

inline double region_cutoff_y(const BivariateLifetimeModel& m, const ConditioningRegion& r,
                              double eps = 1e-9) {
    const double p = require_region_probability(m, r);
    const bool past_axis =
        r.kind == RegionKind::past_past || r.kind == RegionKind::residual_past;
    if (past_axis) return r.t;
    const double hard = std::isfinite(m.support.y_max) ? m.support.y_max - r.t : kInf;
    double hi = 1.0;
    if (std::isfinite(hard)) {
        hi = hard;
    } else {
        while (conditional_marginal_tail_y(m, r, hi, p) > eps && hi < 1e300) hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 120 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (conditional_marginal_tail_y(m, r, mid, p) > eps ? lo : hi) = mid;
    }
    return hi;
}

/// Quadrature domain of a region in shifted coordinates. Residual axes on
/// unbounded supports stay semi-infinite (the quadrature transform
/// handles the tail); bounded supports get tight section bounds.
inline Domain2D region_domain(const BivariateLifetimeModel& m, const ConditioningRegion& r) {
    const Support sup = m.support;
    const double s = r.s, t = r.t;
    const bool x_past = r.kind == RegionKind::past_past || r.kind == RegionKind::past_residual;
    const bool y_past = r.kind == RegionKind::past_past || r.kind == RegionKind::residual_past;
    const double x_shift = x_past ? 0.0 : s;
    const double y_shift = y_past ? 0.0 : t;

    Domain2D d;
    d.lo_x = 0.0;
    d.hi_x = x_past ? std::min(s, sup.x_max)
                    : (std::isfinite(sup.x_max) ? std::max(0.0, sup.x_max - s) : kInf);
    d.y_lo = [sup, x_shift, y_shift](double x) {
        return std::max(0.0, sup.y_lo(x + x_shift) - y_shift);
    };
    if (y_past) {
        d.y_hi = [sup, t, x_shift](double x) {
            return std::min(t, sup.y_hi(x + x_shift));
        };
    } else if (std::isfinite(sup.y_max) || sup.y_upper) {
        d.y_hi = [sup, t, x_shift](double x) {
            return std::max(0.0, sup.y_hi(x + x_shift) - t);
        };
    } else {
        d.y_hi = [](double) { return kInf; };
    }
    if (sup.y_kink)
        d.y_split = [sup, x_shift, y_shift](double x) {
            return sup.y_kink(x + x_shift) - y_shift;
        };
    return d;
}

} // namespace lifeinfo
