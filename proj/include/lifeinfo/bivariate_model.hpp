#pragma once

// Uniform abstraction for bivariate lifetime distributions: joint pdf,
// F(s,t), Fbar(s,t), marginals, quantiles, support geometry, and the
// one-axis section integrals
//   lower_section_x(x,t) = int_0^t f(x,y) dy
//   upper_section_x(x,t) = int_t^inf f(x,y) dy
// (and the y counterparts) that every conditional marginal density is
// built from. Built-in models supply these analytically; finalize_model
// fills anything missing by memoized quadrature.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/univariate.hpp"

namespace lifeinfo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Support {
    enum class Kind { rectangle, triangle, curvilinear };
    Kind kind = Kind::rectangle;
    double x_max = kInf;
    double y_max = kInf;
    std::function<double(double)> y_upper; // optional boundary curve
    std::function<double(double)> y_lower; // optional (curvilinear only)
    std::function<double(double)> y_kink;  // optional interior density seam

    double y_hi(double x) const {
        return y_upper ? std::min(y_max, std::max(0.0, y_upper(x))) : y_max;
    }
    double y_lo(double x) const { return y_lower ? std::max(0.0, y_lower(x)) : 0.0; }
};

struct BivariateLifetimeModel {
    std::string name;
    Support support;
    std::function<double(double, double)> pdf;
    std::function<double(double, double)> cdf;      // F(s,t) = P(X<=s, Y<=t)
    std::function<double(double, double)> survival; // Fbar(s,t) = P(X>s, Y>t)
    std::function<double(double)> marginal_cdf_x, marginal_cdf_y;
    std::function<double(double)> marginal_pdf_x, marginal_pdf_y;
    std::function<double(double)> marginal_quantile_x, marginal_quantile_y;
    std::function<double(double, double)> lower_section_x, lower_section_y;
    std::function<double(double, double)> upper_section_x, upper_section_y;

    // Mixed-quadrant probabilities derived from the joint CDF/marginals:
    // P(X<=s, Y>t) and P(X>s, Y<=t).
    double prob_past_residual(double s, double t) const {
        return std::max(0.0, marginal_cdf_x(s) - cdf(s, t));
    }
    double prob_residual_past(double s, double t) const {
        return std::max(0.0, marginal_cdf_y(t) - cdf(s, t));
    }
};

namespace detail {

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }
inline double clamp(double v, double lo, double hi) {
    return std::min(hi, std::max(lo, v));
}

struct PairKeyLess {
    bool operator()(const std::pair<double, double>& a,
                    const std::pair<double, double>& b) const {
        return a.first < b.first || (a.first == b.first && a.second < b.second);
    }
};

using SectionCache = std::map<std::pair<double, double>, double, PairKeyLess>;

// Memoized 1D section integral of a pdf slice; the cache key is the
// evaluation abscissa pair, so repeated MI integrand calls hit the cache.
inline std::function<double(double, double)> memoized_section(
    std::function<double(double)> bound_hi,
    std::function<double(double, double)> slice_integral) {
    auto cache = std::make_shared<SectionCache>();
    auto mutex = std::make_shared<std::mutex>();
    return [cache, mutex, bound_hi = std::move(bound_hi),
            slice_integral = std::move(slice_integral)](double x, double t) {
        const std::pair<double, double> key{x, t};
        {
            std::lock_guard<std::mutex> lock(*mutex);
            auto it = cache->find(key);
            if (it != cache->end()) return it->second;
        }
        const double value = slice_integral(x, t);
        std::lock_guard<std::mutex> lock(*mutex);
        (*cache)[key] = value;
        return value;
    };
}

} // namespace detail

/// Fill any missing closures of a model from pdf (+ cdf/survival when
/// present) via quadrature. Sections are memoized per (x,t) query.
inline BivariateLifetimeModel finalize_model(BivariateLifetimeModel m) {
    if (!m.pdf) throw std::invalid_argument("finalize_model: pdf is required");
    const Support sup = m.support;

    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-13;

    if (!m.lower_section_x) {
        auto pdf = m.pdf;
        m.lower_section_x = detail::memoized_section(
            [sup](double x) { return sup.y_hi(x); },
            [pdf, sup, spec](double x, double t) {
                const double hi = std::min(t, sup.y_hi(x));
                const double lo = sup.y_lo(x);
                if (!(hi > lo)) return 0.0;
                return integrate_1d([&](double y) { return pdf(x, y); }, lo, hi, spec).value;
            });
    }
    if (!m.upper_section_x) {
        auto pdf = m.pdf;
        m.upper_section_x = detail::memoized_section(
            [sup](double x) { return sup.y_hi(x); },
            [pdf, sup, spec](double x, double t) {
                const double hi = sup.y_hi(x);
                const double lo = std::max(t, sup.y_lo(x));
                if (!(hi > lo)) return 0.0;
                return integrate_1d([&](double y) { return pdf(x, y); }, lo, hi, spec).value;
            });
    }
    if (!m.lower_section_y) {
        auto pdf = m.pdf;
        m.lower_section_y = detail::memoized_section(
            [sup](double) { return sup.x_max; },
            [pdf, sup, spec](double y, double s) {
                const double hi = std::min(s, sup.x_max);
                if (!(hi > 0.0)) return 0.0;
                return integrate_1d([&](double x) { return pdf(x, y); }, 0.0, hi, spec).value;
            });
    }
    if (!m.upper_section_y) {
        auto pdf = m.pdf;
        m.upper_section_y = detail::memoized_section(
            [sup](double) { return sup.x_max; },
            [pdf, sup, spec](double y, double s) {
                if (!(sup.x_max > s)) return 0.0;
                return integrate_1d([&](double x) { return pdf(x, y); }, s, sup.x_max, spec)
                    .value;
            });
    }
    if (!m.marginal_pdf_x) {
        auto sect = m.upper_section_x;
        m.marginal_pdf_x = [sect](double x) { return sect(x, 0.0); };
    }
    if (!m.marginal_pdf_y) {
        auto sect = m.upper_section_y;
        m.marginal_pdf_y = [sect](double y) { return sect(y, 0.0); };
    }
    if (!m.cdf) {
        auto lower = m.lower_section_x;
        auto cache = std::make_shared<detail::SectionCache>();
        auto mutex = std::make_shared<std::mutex>();
        m.cdf = [lower, sup, spec, cache, mutex](double s, double t) {
            const std::pair<double, double> key{s, t};
            {
                std::lock_guard<std::mutex> lock(*mutex);
                auto it = cache->find(key);
                if (it != cache->end()) return it->second;
            }
            double v = 0.0;
            const double hi = std::min(s, sup.x_max);
            if (hi > 0.0 && t > 0.0)
                v = integrate_1d([&](double x) { return lower(x, t); }, 0.0, hi, spec).value;
            v = std::min(1.0, std::max(0.0, v));
            std::lock_guard<std::mutex> lock(*mutex);
            (*cache)[key] = v;
            return v;
        };
    }
    if (!m.marginal_cdf_x) {
        auto surv = m.survival;
        auto cdf = m.cdf;
        if (surv)
            m.marginal_cdf_x = [surv](double x) {
                return std::min(1.0, std::max(0.0, 1.0 - surv(x, 0.0)));
            };
        else
            m.marginal_cdf_x = [cdf, sup](double x) { return cdf(x, sup.y_max); };
    }
    if (!m.marginal_cdf_y) {
        auto surv = m.survival;
        auto cdf = m.cdf;
        if (surv)
            m.marginal_cdf_y = [surv](double y) {
                return std::min(1.0, std::max(0.0, 1.0 - surv(0.0, y)));
            };
        else
            m.marginal_cdf_y = [cdf, sup](double y) { return cdf(sup.x_max, y); };
    }
    if (!m.survival) {
        auto cdf = m.cdf;
        auto fx = m.marginal_cdf_x;
        auto fy = m.marginal_cdf_y;
        m.survival = [cdf, fx, fy](double s, double t) {
            const double sc = std::max(0.0, s);
            const double tc = std::max(0.0, t);
            return std::max(0.0, 1.0 - fx(sc) - fy(tc) + cdf(sc, tc));
        };
    }
    if (!m.marginal_quantile_x)
        m.marginal_quantile_x = quantile_by_bisection(m.marginal_cdf_x, sup.x_max);
    if (!m.marginal_quantile_y)
        m.marginal_quantile_y = quantile_by_bisection(m.marginal_cdf_y, sup.y_max);
    return m;
}

/// Full-support quadrature domain of a model.
inline Domain2D support_domain(const BivariateLifetimeModel& m) {
    const Support sup = m.support;
    Domain2D d;
    d.lo_x = 0.0;
    d.hi_x = sup.x_max;
    d.y_lo = [sup](double x) { return sup.y_lo(x); };
    d.y_hi = [sup](double x) { return sup.y_hi(x); };
    if (sup.y_kink) d.y_split = sup.y_kink;
    return d;
}

/// Relative gap between pdf(x,y) and the central mixed finite difference
/// of the CDF; diagnostic used by the model validation tests.
inline double pdf_vs_mixed_cdf_reldiff(const BivariateLifetimeModel& m, double x, double y,
                                       double h = 1e-5) {
    const double mixed = (m.cdf(x + h, y + h) - m.cdf(x + h, y - h) - m.cdf(x - h, y + h) +
                          m.cdf(x - h, y - h)) /
                         (4.0 * h * h);
    const double f = m.pdf(x, y);
    return std::fabs(mixed - f) / std::max(1.0, std::fabs(f));
}

} // namespace lifeinfo
