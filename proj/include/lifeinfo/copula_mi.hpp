#pragma once

// Copula representations of the dynamic MI at quantile-anchored
// inspection times: past MI through the copula density, residual MI
// through the survival copula. Both are marginal-free by construction.

#include <cmath>
#include <utility>
#include <vector>

#include "lifeinfo/copula.hpp"
#include "lifeinfo/dynamic_mi.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/models.hpp"
#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/types.hpp"

namespace lifeinfo {

/// Past MI at (xi_p, xi_q):
///   log C(p,q) + (1/C(p,q)) II_{[0,p]x[0,q]} c(u,v)
///       log[ c(u,v) / (int_0^q c(u,.) int_0^p c(.,v)) ].
inline MeasureResult past_mi_copula(const Copula& cop, double p, double q,
                                    const QuadratureSpec& spec = {}) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
        throw std::invalid_argument("past_mi_copula requires p,q in (0,1)");
    Copula c = finalize_copula(cop);
    const double Cpq = c.C(p, q);
    if (!(Cpq > 0.0)) throw ZeroRegionProbability("C(p,q) = 0");
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double u, double v) {
            return detail::mi_term(c.density(u, v), c.partial_u(u, q), c.partial_v(p, v),
                                   clamp);
        },
        rectangle(0.0, p, 0.0, q), spec);
    return {std::log(Cpq) + ir.value / Cpq, ir.error_estimate / Cpq, ir.evaluations,
            ir.converged};
}

/// Residual MI at (xi_p, xi_q) in terms of the survival copula
/// Ct(u,v) = u + v - 1 + C(1-u,1-v), ct(u,v) = c(1-u,1-v):
///   log Ct(1-p,1-q) + (1/Ct(1-p,1-q)) II_{[0,1-p]x[0,1-q]} ct(z,w)
///       log[ ct(z,w) / (int_0^{1-q} ct(z,.) int_0^{1-p} ct(.,w)) ].
inline MeasureResult residual_mi_survival_copula(const Copula& cop, double p, double q,
                                                 const QuadratureSpec& spec = {}) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
        throw std::invalid_argument("residual_mi_survival_copula requires p,q in (0,1)");
    SurvivalCopula sc = survival_copula_of(finalize_copula(cop));
    const double up = 1.0 - p;
    const double uq = 1.0 - q;
    const double Ct = sc.C(up, uq);
    if (!(Ct > 0.0)) throw ZeroRegionProbability("survival copula value is 0 at (1-p,1-q)");
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double z, double w) {
            return detail::mi_term(sc.density(z, w), sc.partial_u(z, uq), sc.partial_v(up, w),
                                   clamp);
        },
        rectangle(0.0, up, 0.0, uq), spec);
    return {std::log(Ct) + ir.value / Ct, ir.error_estimate / Ct, ir.evaluations,
            ir.converged};
}

/// Max pairwise gap of the past and residual MI across different marginal
/// choices at fixed quantile levels; should vanish, the copula routes are
/// marginal-free.
inline double marginal_freeness_check(
    const Copula& cop,
    const std::vector<std::pair<UnivariateModel, UnivariateModel>>& marginal_pairs, double p,
    double q, const QuadratureSpec& spec = {}) {
    if (marginal_pairs.size() < 2)
        throw std::invalid_argument("marginal_freeness_check needs at least 2 marginal pairs");
    std::vector<double> past_vals, res_vals;
    for (const auto& [mx, my] : marginal_pairs) {
        BivariateLifetimeModel m = make_from_copula(cop, mx, my);
        const double s = mx.quantile(p);
        const double t = my.quantile(q);
        past_vals.push_back(past_mi(m, s, t, spec).value);
        res_vals.push_back(residual_mi(m, s, t, spec).value);
    }
    double max_diff = 0.0;
    for (size_t i = 0; i < past_vals.size(); ++i)
        for (size_t j = i + 1; j < past_vals.size(); ++j) {
            max_diff = std::max(max_diff, std::fabs(past_vals[i] - past_vals[j]));
            max_diff = std::max(max_diff, std::fabs(res_vals[i] - res_vals[j]));
        }
    return max_diff;
}

} // namespace lifeinfo
