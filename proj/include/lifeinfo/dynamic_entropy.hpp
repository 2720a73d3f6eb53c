#pragma once

// Region-conditional bivariate entropies, the conditional marginal
// entropies, the discrete entropy of a probability vector, and the
// partitioning identity that ties them back to the unconditional joint
// entropy. All values are in nats.

#include <cmath>
#include <vector>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/regions.hpp"
#include "lifeinfo/types.hpp"

namespace lifeinfo {

/// Joint entropy of the conditional vector on the given region:
/// -II g log g over the region domain, g the conditional density.
inline MeasureResult joint_entropy(const BivariateLifetimeModel& m,
                                   const ConditioningRegion& r,
                                   const QuadratureSpec& spec = {}) {
    const double p = require_region_probability(m, r);
    const Domain2D domain = region_domain(m, r);
    const double x_shift =
        (r.kind == RegionKind::past_past || r.kind == RegionKind::past_residual) ? 0.0 : r.s;
    const double y_shift =
        (r.kind == RegionKind::past_past || r.kind == RegionKind::residual_past) ? 0.0 : r.t;
    const double clamp = spec.abs_tol;
    IntegralResult ir = integrate_2d(
        [&](double x, double y) {
            return -xlogx(m.pdf(x + x_shift, y + y_shift) / p, clamp);
        },
        domain, spec);
    return {ir.value, ir.error_estimate, ir.evaluations, ir.converged};
}

enum class Axis { X, Y };

/// Entropy of the conditional marginal on one axis of the region.
inline MeasureResult marginal_entropy(const BivariateLifetimeModel& m,
                                      const ConditioningRegion& r, Axis axis,
                                      const QuadratureSpec& spec = {}) {
    const double p = require_region_probability(m, r);
    const double clamp = spec.abs_tol;
    const bool past_axis = axis == Axis::X
                               ? (r.kind == RegionKind::past_past ||
                                  r.kind == RegionKind::past_residual)
                               : (r.kind == RegionKind::past_past ||
                                  r.kind == RegionKind::residual_past);
    double hi;
    if (axis == Axis::X) {
        hi = past_axis ? std::min(r.s, m.support.x_max)
                       : (std::isfinite(m.support.x_max)
                              ? std::max(0.0, m.support.x_max - r.s)
                              : kInf);
    } else {
        hi = past_axis ? std::min(r.t, m.support.y_max)
                       : (std::isfinite(m.support.y_max)
                              ? std::max(0.0, m.support.y_max - r.t)
                              : kInf);
    }
    auto g = [&](double v) {
        const double raw = axis == Axis::X ? detail::raw_marginal_x(m, r, v)
                                           : detail::raw_marginal_y(m, r, v);
        return -xlogx(raw / p, clamp);
    };
    IntegralResult ir = integrate_1d(g, 0.0, hi, spec);
    return {ir.value, ir.error_estimate, ir.evaluations, ir.converged};
}

/// -sum p_i log p_i with 0*log(0) = 0. Rejects vectors that are not a
/// probability distribution (entries < 0 or total != 1 within 1e-9).
inline double discrete_entropy(const std::vector<double>& p) {
    double total = 0.0;
    for (double pi : p) {
        if (pi < -1e-12)
            throw NotAProbabilityVector("negative probability " + std::to_string(pi));
        total += pi;
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw NotAProbabilityVector("probabilities sum to " + std::to_string(total));
    double h = 0.0;
    for (double pi : p) h -= xlogx(std::max(0.0, pi));
    return h;
}

/// Unconditional joint entropy -II f log f over the support.
inline MeasureResult static_joint_entropy(const BivariateLifetimeModel& m,
                                          const QuadratureSpec& spec = {}) {
    Domain2D d = support_domain(m);
    const double clamp = spec.abs_tol;
    IntegralResult ir =
        integrate_2d([&](double x, double y) { return -xlogx(m.pdf(x, y), clamp); }, d, spec);
    return {ir.value, ir.error_estimate, ir.evaluations, ir.converged};
}

struct EntropyBundle {
    double h_joint = 0.0;
    double h_x = 0.0;
    double h_y = 0.0;
    ConditioningRegion region;
    double numerical_error = 0.0;
};

inline EntropyBundle entropy_bundle(const BivariateLifetimeModel& m,
                                    const ConditioningRegion& r,
                                    const QuadratureSpec& spec = {}) {
    const MeasureResult hj = joint_entropy(m, r, spec);
    const MeasureResult hx = marginal_entropy(m, r, Axis::X, spec);
    const MeasureResult hy = marginal_entropy(m, r, Axis::Y, spec);
    return {hj.value, hx.value, hy.value, r,
            hj.numerical_error + hx.numerical_error + hy.numerical_error};
}

struct DecompositionReport {
    double residual = 0.0;       // H_XY - reconstruction; ~0 when everything is consistent
    double combined_error = 0.0; // sum of the quadrature error estimates involved
};

/// Partition identity: H_XY equals the entropy of the four region
/// probabilities plus the probability-weighted conditional entropies.
inline DecompositionReport verify_decomposition(const BivariateLifetimeModel& m, double s,
                                                double t, const QuadratureSpec& spec = {}) {
    const ConditioningRegion regions[4] = {
        {RegionKind::past_past, s, t},
        {RegionKind::residual_residual, s, t},
        {RegionKind::past_residual, s, t},
        {RegionKind::residual_past, s, t},
    };
    std::vector<double> probs;
    probs.reserve(4);
    for (const auto& r : regions) probs.push_back(require_region_probability(m, r));

    const MeasureResult h_static = static_joint_entropy(m, spec);
    double recon = discrete_entropy(probs);
    double err = h_static.numerical_error;
    for (int i = 0; i < 4; ++i) {
        const MeasureResult h = joint_entropy(m, regions[i], spec);
        recon += probs[i] * h.value;
        err += probs[i] * h.numerical_error;
    }
    return {h_static.value - recon, err};
}

} // namespace lifeinfo
