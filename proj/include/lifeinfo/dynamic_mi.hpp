#pragma once

// Past and residual dynamic mutual information. The production routes
// integrate f * log of the local dependence ratio under the joint density
// (one 2D quadrature); the literal conditional-density route and the
// entropy-identity route are kept as cross-checks.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/dynamic_entropy.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/regions.hpp"
#include "lifeinfo/tte.hpp"
#include "lifeinfo/types.hpp"

namespace lifeinfo {

namespace detail {

// f * log(f / (gx*gy)) with the 0*log(0) extension. A positive density
// over a vanished marginal product signals an inconsistent model.
inline double mi_term(double f, double gx, double gy, double clamp) {
    if (f <= 0.0) {
        if (f < -clamp)
            throw NegativeDensity("mi integrand: density " + std::to_string(f));
        return 0.0;
    }
    const double den = gx * gy;
    if (den <= 0.0) {
        if (f > 1e-12)
            throw NonFiniteIntegrand("mi integrand: zero marginal section under positive density");
        return 0.0;
    }
    return f * std::log(f / den);
}

} // namespace detail

/// Unconditional mutual information M = II f log(f/(fX fY)), internally
/// cross-checked against H_X + H_Y - H_XY.
inline MeasureResult mutual_information_static(const BivariateLifetimeModel& m,
                                               const QuadratureSpec& spec = {}) {
    const Support sup = m.support;
    Domain2D d = support_domain(m);
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            return detail::mi_term(m.pdf(x, y), m.marginal_pdf_x(x), m.marginal_pdf_y(y),
                                   clamp);
        },
        d, spec);

    auto entropy_1d = [&](const std::function<double(double)>& pdf, double hi) {
        return integrate_1d([&](double v) { return -xlogx(pdf(v), clamp); }, 0.0, hi, spec);
    };
    IntegralResult hx = entropy_1d(m.marginal_pdf_x, sup.x_max);
    IntegralResult hy = entropy_1d(m.marginal_pdf_y, sup.y_max);
    MeasureResult hxy = static_joint_entropy(m, spec);
    const double via_entropies = hx.value + hy.value - hxy.value;
    const double cross_err =
        hx.error_estimate + hy.error_estimate + hxy.numerical_error + ir.error_estimate;

    MeasureResult out;
    out.value = ir.value;
    out.numerical_error = std::max(ir.error_estimate, std::fabs(ir.value - via_entropies));
    out.evaluations = ir.evaluations + hx.evaluations + hy.evaluations + hxy.evaluations;
    out.converged =
        ir.converged && std::fabs(ir.value - via_entropies) <= std::max(3.0 * cross_err, 1e-9);
    return out;
}

/// Past MI at (s,t): (1/F) II f log[f / (int_0^t f(x,.) int_0^s f(.,y))]
/// + log F, over [0,s] x [0,t].
inline MeasureResult past_mi(const BivariateLifetimeModel& m, double s, double t,
                             const QuadratureSpec& spec = {}) {
    const ConditioningRegion region{RegionKind::past_past, s, t};
    const double p = require_region_probability(m, region);
    const Support sup = m.support;
    Domain2D d;
    d.lo_x = 0.0;
    d.hi_x = std::min(s, sup.x_max);
    d.y_lo = [sup](double x) { return sup.y_lo(x); };
    d.y_hi = [sup, t](double x) { return std::min(t, sup.y_hi(x)); };
    if (sup.y_kink) d.y_split = sup.y_kink;
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            return detail::mi_term(m.pdf(x, y), m.lower_section_x(x, t),
                                   m.lower_section_y(y, s), clamp);
        },
        d, spec);
    return {ir.value / p + std::log(p), ir.error_estimate / p, ir.evaluations, ir.converged};
}

/// Residual MI at (s,t): (1/Fbar) II f log[f / (int_t^inf f(x,.)
/// int_s^inf f(.,y))] + log Fbar, over [s,inf) x [t,inf).
inline MeasureResult residual_mi(const BivariateLifetimeModel& m, double s, double t,
                                 const QuadratureSpec& spec = {}) {
    const ConditioningRegion region{RegionKind::residual_residual, s, t};
    const double p = require_region_probability(m, region);
    const Support sup = m.support;
    Domain2D d;
    d.lo_x = s;
    d.hi_x = sup.x_max;
    d.y_lo = [sup, t](double x) { return std::max(t, sup.y_lo(x)); };
    d.y_hi = [sup](double x) { return sup.y_hi(x); };
    if (sup.y_kink) d.y_split = sup.y_kink;
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            return detail::mi_term(m.pdf(x, y), m.upper_section_x(x, t),
                                   m.upper_section_y(y, s), clamp);
        },
        d, spec);
    return {ir.value / p + std::log(p), ir.error_estimate / p, ir.evaluations, ir.converged};
}

/// Literal conditional-density route (the defining double integral in
/// shifted coordinates); cross-check for past_mi/residual_mi.
inline MeasureResult dynamic_mi_direct(const BivariateLifetimeModel& m,
                                       const ConditioningRegion& region,
                                       const QuadratureSpec& spec = {}) {
    const double p = require_region_probability(m, region);
    const Domain2D d = region_domain(m, region);
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            const double g = conditional_density(m, region, x, y);
            return detail::mi_term(g, detail::raw_marginal_x(m, region, x) / p,
                                   detail::raw_marginal_y(m, region, y) / p, clamp);
        },
        d, spec);
    return {ir.value, ir.error_estimate, ir.evaluations, ir.converged};
}

/// Entropy-identity route M = H_X + H_Y - H_XY on the region.
inline MeasureResult dynamic_mi_entropy_route(const BivariateLifetimeModel& m,
                                              const ConditioningRegion& region,
                                              const QuadratureSpec& spec = {}) {
    const EntropyBundle b = entropy_bundle(m, region, spec);
    MeasureResult out;
    out.value = b.h_x + b.h_y - b.h_joint;
    out.numerical_error = b.numerical_error;
    return out;
}

enum class BoundDirection { upper, lower, inapplicable };

inline const char* bound_direction_name(BoundDirection d) {
    switch (d) {
        case BoundDirection::upper: return "upper";
        case BoundDirection::lower: return "lower";
        case BoundDirection::inapplicable: return "inapplicable";
    }
    return "?";
}

struct BoundReport {
    double bound_value = std::numeric_limits<double>::quiet_NaN();
    BoundDirection direction = BoundDirection::inapplicable;
    bool monotonicity_verified = false;
};

namespace detail {

// Shared probe logic: compare the dependence kernel a(x,y) against its
// corner value a(s,t) at the probe points; the hypothesis only matters
// where the joint density is positive.
template <typename Kernel>
BoundReport probe_bound(Kernel&& a_of, double corner, double log_prob,
                        const std::vector<double>& xs, const std::vector<double>& ys) {
    BoundReport rep;
    if (!(corner > 0.0)) return rep;
    bool all_le = true, all_ge = true;
    const double slack = 1e-10 * corner;
    for (double x : xs) {
        for (double y : ys) {
            const double a = a_of(x, y);
            if (!(a > 0.0)) continue; // outside the support: no constraint
            if (a > corner + slack) all_le = false;
            if (a < corner - slack) all_ge = false;
        }
        if (!all_le && !all_ge) break;
    }
    if (all_le || all_ge) {
        rep.direction = all_le ? BoundDirection::upper : BoundDirection::lower;
        rep.bound_value = std::log(corner) + log_prob;
        rep.monotonicity_verified = true;
    }
    return rep;
}

inline std::vector<double> linear_probes(double lo, double hi, int n) {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) v.push_back(lo + (hi - lo) * i / (n + 1.0));
    return v;
}

// Geometric offsets from `lo`, so that a heavy-tail cutoff still leaves
// probes near the corner where the kernel varies.
inline std::vector<double> stretched_probes(double lo, double extent, int n) {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(n));
    const double scale = std::log1p(extent);
    for (int i = 1; i <= n; ++i) v.push_back(lo + std::expm1(scale * i / (n + 1.0)));
    return v;
}

} // namespace detail

/// Bound for the past MI: if a~(x,y;s,t) <= (>=) a~(s,t;s,t) everywhere
/// on [0,s] x [0,t], then M~ <= (>=) log a~(s,t;s,t) + log F(s,t).
/// The hypothesis is verified on a grid; `inapplicable` is a valid result.
inline BoundReport past_mi_bound(const BivariateLifetimeModel& m, double s, double t,
                                 int grid_n = 32) {
    const ConditioningRegion region{RegionKind::past_past, s, t};
    const double p = require_region_probability(m, region);
    auto a_of = [&](double x, double y) {
        const double f = m.pdf(x, y);
        if (!(f > 0.0)) return 0.0;
        const double den = m.lower_section_x(x, t) * m.lower_section_y(y, s);
        return den > 0.0 ? f / den : 0.0;
    };
    return detail::probe_bound(a_of, a_of(s, t), std::log(p),
                               detail::linear_probes(0.0, s, grid_n),
                               detail::linear_probes(0.0, t, grid_n));
}

/// Residual analogue on [s,inf) x [t,inf), probed on a tail-cutoff grid.
inline BoundReport residual_mi_bound(const BivariateLifetimeModel& m, double s, double t,
                                     int grid_n = 32) {
    const ConditioningRegion region{RegionKind::residual_residual, s, t};
    const double p = require_region_probability(m, region);
    auto a_of = [&](double x, double y) {
        const double f = m.pdf(x, y);
        if (!(f > 0.0)) return 0.0;
        const double den = m.upper_section_x(x, t) * m.upper_section_y(y, s);
        return den > 0.0 ? f / den : 0.0;
    };
    const double x_extent = region_cutoff_x(m, region, 1e-6);
    const double y_extent = region_cutoff_y(m, region, 1e-6);
    return detail::probe_bound(a_of, a_of(s, t), std::log(p),
                               detail::stretched_probes(s, x_extent, grid_n),
                               detail::stretched_probes(t, y_extent, grid_n));
}

enum class RegionClass { past, residual };

/// The local dependence ratio f_cond / (fX_cond * fY_cond) at shifted
/// coordinates (x,y): the reversed-hazard-rate ratio for past regions and
/// the hazard-rate ratio for residual regions.
inline double local_dependence_ratio(const BivariateLifetimeModel& m, RegionClass cls,
                                     double x, double y, double s, double t) {
    if (cls == RegionClass::past) {
        const ConditioningRegion region{RegionKind::past_past, s, t};
        const double p = require_region_probability(m, region);
        if (x < 0.0 || x > s || y < 0.0 || y > t)
            throw std::invalid_argument("local_dependence_ratio: (x,y) outside [0,s]x[0,t]");
        const double den = m.lower_section_x(x, t) * m.lower_section_y(y, s);
        if (!(den > 0.0)) throw ZeroDenominator("past marginal section product is zero");
        return m.pdf(x, y) * p / den;
    }
    const ConditioningRegion region{RegionKind::residual_residual, s, t};
    const double p = require_region_probability(m, region);
    if (x < 0.0 || y < 0.0)
        throw std::invalid_argument("local_dependence_ratio: residual coordinates are >= 0");
    const double den = m.upper_section_x(x + s, t) * m.upper_section_y(y + t, s);
    if (!(den > 0.0)) throw ZeroDenominator("residual marginal section product is zero");
    return m.pdf(x + s, y + t) * p / den;
}

/// For a pair with f_UV(x,y) = f_XY(2*x0-x, 2*y0-y), the past MI of (U,V)
/// equals the residual MI of (X,Y) at the reflected times. Returns the
/// max absolute gap over the grid of (s,t) points (valid for both sides).
inline double symmetry_transfer_check(const BivariateLifetimeModel& mxy,
                                      const BivariateLifetimeModel& muv, double x0, double y0,
                                      const std::vector<std::pair<double, double>>& grid,
                                      const QuadratureSpec& spec = {}) {
    const double X = 2.0 * x0, Y = 2.0 * y0;
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            const double x = X * i / 7.0;
            const double y = Y * j / 7.0;
            const double lhs = muv.pdf(x, y);
            const double rhs = mxy.pdf(X - x, Y - y);
            if (std::fabs(lhs - rhs) > 1e-8 * std::max(1.0, std::fabs(rhs)))
                throw NotSymmetricPair("densities disagree at (" + std::to_string(x) + "," +
                                       std::to_string(y) + ")");
        }
    }
    double max_diff = 0.0;
    for (const auto& [s, t] : grid) {
        const double lhs = past_mi(muv, s, t, spec).value;
        const double rhs = residual_mi(mxy, X - s, Y - t, spec).value;
        max_diff = std::max(max_diff, std::fabs(lhs - rhs));
    }
    return max_diff;
}

/// Residual MI of a TTE model through the substituted (u,v) integral,
/// u = R1(x+s), v = R2(y+t); finite limits in the truncated case.
inline MeasureResult residual_mi_tte(const TTEModel& t, double s, double tt,
                                     const QuadratureSpec& spec = {}) {
    const double u0 = t.R1(s);
    const double v0 = t.R2(tt);
    if (t.truncated() && !(u0 + v0 < t.omega))
        throw ZeroRegionProbability("truncated TTE: R1(s)+R2(t) >= omega");
    const double w0 = t.W_bar(u0 + v0);
    if (!(w0 > 0.0)) throw ZeroRegionProbability("TTE: W_bar(R1(s)+R2(t)) is zero");

    Domain2D d;
    d.lo_x = u0;
    if (t.truncated()) {
        d.hi_x = t.omega - v0;
        d.y_lo = [v0](double) { return v0; };
        d.y_hi = [om = t.omega](double u) { return om - u; };
    } else {
        d.hi_x = kInf;
        d.y_lo = [v0](double) { return v0; };
        d.y_hi = [](double) { return kInf; };
    }
    IntegralResult ir = integrate_2d(
        [&](double u, double v) {
            const double w2 = t.w2_ext(u + v);
            if (!(w2 > 0.0)) return 0.0;
            const double den = t.w1_ext(u + v0) * t.w1_ext(u0 + v);
            if (!(den > 1e-300)) return 0.0;
            return w2 * std::log(w2 * w0 / den);
        },
        d, spec);
    return {ir.value / w0, ir.error_estimate / w0, ir.evaluations, ir.converged};
}

/// Max deviation of M(t,t) from M(0,0) over the grid. With require_blm
/// the bivariate lack-of-memory identity is first verified at probe
/// points (Fbar(x+t,y+t) = Fbar(x,y) Fbar(t,t)); deviations are relative
/// when |M(0,0)| > 0.1, absolute otherwise.
inline double blm_constancy_check(const BivariateLifetimeModel& m,
                                  const std::vector<double>& t_grid,
                                  const QuadratureSpec& spec = {}, bool require_blm = true) {
    if (require_blm) {
        const double probes[3] = {m.marginal_quantile_x(0.25), m.marginal_quantile_x(0.5),
                                  m.marginal_quantile_x(0.75)};
        for (double x : probes)
            for (double y : probes)
                for (double tp : probes) {
                    const double lhs = m.survival(x + tp, y + tp);
                    const double rhs = m.survival(x, y) * m.survival(tp, tp);
                    if (std::fabs(lhs - rhs) > 1e-10)
                        throw NotBLM("BLM identity fails at (" + std::to_string(x) + "," +
                                     std::to_string(y) + "," + std::to_string(tp) + ")");
                }
    }
    const double ref = residual_mi(m, 0.0, 0.0, spec).value;
    double max_dev = 0.0;
    for (double tp : t_grid) {
        const double v = residual_mi(m, tp, tp, spec).value;
        double dev = std::fabs(v - ref);
        if (std::fabs(ref) > 0.1) dev /= std::fabs(ref);
        max_dev = std::max(max_dev, dev);
    }
    return max_dev;
}

} // namespace lifeinfo
