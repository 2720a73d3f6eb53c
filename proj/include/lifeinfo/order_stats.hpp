#pragma once

// Dynamic mutual information of the minimum and maximum of n i.i.d.
// lifetimes conditional on {X_{1:n} <= s, X_{n:n} > t}, s < t: conditional
// densities, the direct double integral, and the distribution-free closed
// form in the quantile parametrization (p,q).

#include <cmath>
#include <vector>

#include "lifeinfo/errors.hpp"
#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/types.hpp"
#include "lifeinfo/univariate.hpp"

namespace lifeinfo {

struct OrderStatModel {
    UnivariateModel component;
    int n = 2;
};

namespace detail {

// (1-u)^m - (q-u)^m computed through expm1/log1p; the naive difference
// cancels catastrophically when q -> 1.
inline double power_gap(double u, double q, int m) {
    const double base = 1.0 - u;
    if (base <= 0.0) return 0.0;
    const double other = q - u;
    if (other <= 0.0) return std::pow(base, m);
    return -std::pow(base, m) * std::expm1(m * std::log1p((q - 1.0) / base));
}

} // namespace detail

/// P(X_{1:n} <= s, X_{n:n} > t) in terms of the component CDF values
/// F_s = F(s), F_t = F(t):  1 - F_t^n + (F_t - F_s)^n - (1 - F_s)^n.
inline double joint_event_prob(double F_s, double F_t, int n) {
    if (!(0.0 <= F_s && F_s <= F_t && F_t <= 1.0))
        throw InvalidProbabilityOrder("joint_event_prob requires 0 <= F(s) <= F(t) <= 1");
    if (n < 2) throw std::invalid_argument("joint_event_prob: n >= 2 required");
    return 1.0 - std::pow(F_t, n) + std::pow(F_t - F_s, n) - std::pow(1.0 - F_s, n);
}

/// The joint probability in the quantile parametrization.
inline double h_n(double p, double q, int n) {
    if (!(0.0 < p && p < q && q < 1.0))
        throw std::invalid_argument("h_n requires 0 < p < q < 1");
    return joint_event_prob(p, q, n);
}

/// K_n(p,q) = int_0^p [(1-u)^{n-1} - (q-u)^{n-1}]
///                 * log[(1-u)^{n-1} - (q-u)^{n-1}] du.
inline double k_n(double p, double q, int n, const QuadratureSpec& spec = {}) {
    if (!(0.0 <= p && p < 1.0 && 0.0 < q && q <= 1.0))
        throw std::invalid_argument("k_n requires p in [0,1) and q in (0,1]");
    if (n < 2) throw std::invalid_argument("k_n: n >= 2 required");
    if (p == 0.0) return 0.0;
    const int m = n - 1;
    return integrate_1d(
               [q, m](double u) { return xlogx(detail::power_gap(u, q, m)); }, 0.0, p, spec)
        .value;
}

struct OsConditionalDensities {
    std::function<double(double)> f_min;            // on (0, s)
    std::function<double(double)> f_max;            // on (t, inf)
    std::function<double(double, double)> f_joint;  // on 0 < x < s < t < y
    double event_prob = 0.0;
};

/// Conditional densities of the minimum, maximum, and the pair given
/// {X_{1:n} <= s, X_{n:n} > t}.
inline OsConditionalDensities conditional_os_densities(const OrderStatModel& osm, double s,
                                                       double t) {
    if (!(0.0 < s && s < t)) throw std::invalid_argument("requires 0 < s < t");
    const int n = osm.n;
    const UnivariateModel c = osm.component;
    const double P = joint_event_prob(c.cdf(s), c.cdf(t), n);
    if (!(P > 0.0)) throw ZeroRegionProbability("order-statistics event has zero probability");

    OsConditionalDensities out;
    out.event_prob = P;
    const double Ft = c.cdf(t);
    const double Fs = c.cdf(s);
    out.f_min = [c, n, s, Ft, P](double x) {
        if (x <= 0.0 || x >= s) return 0.0;
        const double Fx = c.cdf(x);
        const double gap = std::pow(1.0 - Fx, n - 1) - std::pow(Ft - Fx, n - 1);
        return n * gap * c.pdf(x) / P;
    };
    out.f_max = [c, n, t, Fs, P](double y) {
        if (y <= t) return 0.0;
        const double Fy = c.cdf(y);
        const double gap = std::pow(Fy, n - 1) - std::pow(Fy - Fs, n - 1);
        return n * gap * c.pdf(y) / P;
    };
    out.f_joint = [c, n, s, t, P](double x, double y) {
        if (x <= 0.0 || x >= s || y <= t) return 0.0;
        return n * (n - 1.0) * std::pow(c.cdf(y) - c.cdf(x), n - 2) * c.pdf(x) * c.pdf(y) / P;
    };
    return out;
}

/// Direct 2D quadrature of the defining MI integral over (0,s) x (t,inf).
inline MeasureResult os_mi_direct(const OrderStatModel& osm, double s, double t,
                                  const QuadratureSpec& spec = {}) {
    const OsConditionalDensities d = conditional_os_densities(osm, s, t);
    Domain2D dom;
    dom.lo_x = 0.0;
    dom.hi_x = s;
    dom.y_lo = [t](double) { return t; };
    dom.y_hi = [hi = osm.component.x_max](double) { return hi; };
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            const double fj = d.f_joint(x, y);
            if (fj <= 0.0) {
                if (fj < -clamp) throw NegativeDensity("os joint density negative");
                return 0.0;
            }
            return fj * std::log(fj / (d.f_min(x) * d.f_max(y)));
        },
        dom, spec);
    return {ir.value, ir.error_estimate, ir.evaluations, ir.converged};
}

/// Distribution-free closed form of the dynamic MI at quantile levels
/// (p,q): log[(n-1)/n H_n] - (n-2)(2n-1)/(n(n-1))
///        - n/H_n { K_n(p,q) + K_n(1-q,1-p)
///                  + (n-2)/n [ (1-p)^n log(1-p) + q^n log q
///                              - (q-p)^n log(q-p) ] }.
inline double os_mi_closed_form(double p, double q, int n, const QuadratureSpec& spec = {}) {
    if (!(0.0 < p && p < q && q < 1.0))
        throw std::invalid_argument("os_mi_closed_form requires 0 < p < q < 1");
    if (n < 2) throw std::invalid_argument("os_mi_closed_form: n >= 2 required");
    const double H = h_n(p, q, n);
    const double nn = n;
    double value = std::log((nn - 1.0) / nn * H) - (nn - 2.0) * (2.0 * nn - 1.0) / (nn * (nn - 1.0));
    double bracket = k_n(p, q, n, spec) + k_n(1.0 - q, 1.0 - p, n, spec);
    bracket += (nn - 2.0) / nn *
               (std::pow(1.0 - p, n) * std::log(1.0 - p) + std::pow(q, n) * std::log(q) -
                std::pow(q - p, n) * std::log(q - p));
    return value - nn / H * bracket;
}

/// Closed form with the K_n quadrature error carried through.
inline MeasureResult os_mi_closed_form_measured(double p, double q, int n,
                                                const QuadratureSpec& spec = {}) {
    if (!(0.0 < p && p < q && q < 1.0))
        throw std::invalid_argument("os_mi_closed_form requires 0 < p < q < 1");
    const double H = h_n(p, q, n);
    IntegralResult k1 = integrate_1d(
        [q, m = n - 1](double u) { return xlogx(detail::power_gap(u, q, m)); }, 0.0, p, spec);
    IntegralResult k2 = integrate_1d(
        [pp = 1.0 - p, m = n - 1](double u) { return xlogx(detail::power_gap(u, pp, m)); },
        0.0, 1.0 - q, spec);
    const double nn = n;
    double value =
        std::log((nn - 1.0) / nn * H) - (nn - 2.0) * (2.0 * nn - 1.0) / (nn * (nn - 1.0));
    double bracket = k1.value + k2.value;
    bracket += (nn - 2.0) / nn *
               (std::pow(1.0 - p, n) * std::log(1.0 - p) + std::pow(q, n) * std::log(q) -
                std::pow(q - p, n) * std::log(q - p));
    MeasureResult out;
    out.value = value - nn / H * bracket;
    out.numerical_error = nn / H * (k1.error_estimate + k2.error_estimate);
    out.evaluations = k1.evaluations + k2.evaluations;
    out.converged = k1.converged && k2.converged;
    return out;
}

struct OsSurfaceRow {
    double p = 0.0;
    double q = 0.0;
    double value = 0.0;
};

/// Closed-form MI surface over a (p,q) grid, filtered to p < q.
inline std::vector<OsSurfaceRow> os_mi_surface(int n, const std::vector<double>& p_grid,
                                               const std::vector<double>& q_grid) {
    std::vector<OsSurfaceRow> rows;
    rows.reserve(p_grid.size() * q_grid.size());
    for (double p : p_grid)
        for (double q : q_grid) {
            if (!(0.0 < p && p < q && q < 1.0)) continue;
            rows.push_back({p, q, os_mi_closed_form(p, q, n)});
        }
    return rows;
}

} // namespace lifeinfo
