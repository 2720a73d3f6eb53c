#pragma once

// Adaptive Gauss-Kronrod quadrature (G7/K15) for 1D and iterated 2D
// integrals over finite, semi-infinite, and x-section domains.
//
// Semi-infinite axes are mapped onto (0,1) before integration:
//   rational_map:  x = lo + u/(1-u),   dx = du/(1-u)^2
//   log_map:       x = lo - log(1-u),  dx = du/(1-u)
// The rational map keeps polynomially decaying integrands polynomial in
// the mapped variable; the log map is for integrands with exponential
// tail decay (a polynomial tail under the log map turns into an
// unbounded endpoint spike the error estimator cannot certify).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lifeinfo/errors.hpp"

namespace lifeinfo {

enum class Transform { none, rational_map, log_map };

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int max_subdivisions = 400;
    Transform transform = Transform::rational_map;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: rel_tol > 0, abs_tol > 0, "
                                        "max_subdivisions >= 1 required");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// v*log(v) extended continuously by 0 at v=0. Values in (-clamp_tol, 0]
/// are treated as exact zeros (cancellation near support edges); anything
/// below -clamp_tol signals a broken density.
inline double xlogx(double v, double clamp_tol = 1e-10) {
    if (v > 0.0) return v * std::log(v);
    if (v >= -clamp_tol) return 0.0;
    throw NegativeDensity("xlogx: density value " + std::to_string(v) +
                          " below -" + std::to_string(clamp_tol));
}

namespace detail {

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule. Standard QUADPACK constants.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double lo = 0.0, hi = 0.0;
    double value = 0.0;
    double error = 0.0;
};

// One G7/K15 evaluation on [lo,hi] with the QUADPACK error heuristic.
template <typename F>
Segment gauss_kronrod_15(F&& f, double lo, double hi, long& evaluations) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    auto eval = [&](double x) {
        double v = f(x);
        ++evaluations;
        if (!std::isfinite(v))
            throw NonFiniteIntegrand("integrand returned non-finite value at x=" +
                                     std::to_string(x));
        return v;
    };

    double fv[15];
    const double fc = eval(center);
    double resk = kK15Weights[7] * fc;
    double resg = kG7Weights[3] * fc;
    double resabs = kK15Weights[7] * std::fabs(fc);
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGK15Nodes[j];
        const double f1 = eval(center - dx);
        const double f2 = eval(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kK15Weights[j] * (f1 + f2);
        resabs += kK15Weights[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kG7Weights[(j - 1) / 2] * (f1 + f2);
    }

    const double mean = 0.5 * resk;
    double resasc = kK15Weights[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kK15Weights[j] *
                  (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));

    Segment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    seg.error = err;
    return seg;
}

template <typename F>
IntegralResult adapt_finite(F&& f, double lo, double hi, const QuadratureSpec& spec) {
    IntegralResult out;
    if (!(lo < hi)) {
        if (lo == hi) return out;
        throw std::invalid_argument("integrate_1d: lo < hi required");
    }

    std::vector<Segment> segs;
    segs.reserve(static_cast<size_t>(spec.max_subdivisions) + 1);
    segs.push_back(gauss_kronrod_15(f, lo, hi, out.evaluations));

    double total = segs[0].value;
    double total_err = segs[0].error;
    int subdivisions = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) &&
           subdivisions < spec.max_subdivisions) {
        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Segment seg = segs[worst];
        const double mid = 0.5 * (seg.lo + seg.hi);
        if (!(seg.lo < mid && mid < seg.hi)) break; // interval at machine resolution
        Segment left = gauss_kronrod_15(f, seg.lo, mid, out.evaluations);
        Segment right = gauss_kronrod_15(f, mid, seg.hi, out.evaluations);
        segs[worst] = left;
        segs.push_back(right);
        ++subdivisions;

        total = 0.0;
        total_err = 0.0;
        for (const Segment& s : segs) {
            total += s.value;
            total_err += s.error;
        }
    }

    out.value = total;
    out.error_estimate = total_err;
    out.converged = total_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    return out;
}

} // namespace detail

/// Integrate f over (lo, hi); hi may be +infinity, in which case the
/// spec's transform (rational_map or log_map) is applied. The result is
/// always returned; converged=false flags an exhausted subdivision budget.
template <typename F>
IntegralResult integrate_1d(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (std::isinf(hi)) {
        if (spec.transform == Transform::none)
            throw std::invalid_argument(
                "integrate_1d: semi-infinite domain requires rational_map or log_map");
        if (spec.transform == Transform::rational_map) {
            auto g = [&](double u) {
                const double omu = 1.0 - u;
                const double fx = f(lo + u / omu);
                return fx == 0.0 ? 0.0 : fx / (omu * omu);
            };
            return detail::adapt_finite(g, 0.0, 1.0, spec);
        }
        auto g = [&](double u) {
            const double omu = 1.0 - u;
            const double fx = f(lo - std::log(omu));
            return fx == 0.0 ? 0.0 : fx / omu;
        };
        return detail::adapt_finite(g, 0.0, 1.0, spec);
    }
    return detail::adapt_finite(f, lo, hi, spec);
}

/// 2D integration domain: x in (lo_x, hi_x), y in (y_lo(x), y_hi(x)).
/// Either axis may be semi-infinite (hi_x = inf, or y_hi returning inf).
/// y_split marks an interior curve where the integrand is non-smooth
/// (a piecewise density seam); inner integrals are split there.
struct Domain2D {
    double lo_x = 0.0;
    double hi_x = 0.0;
    std::function<double(double)> y_lo;
    std::function<double(double)> y_hi;
    std::function<double(double)> y_split;
};

inline Domain2D rectangle(double lo_x, double hi_x, double lo_y, double hi_y) {
    return {lo_x, hi_x, [lo_y](double) { return lo_y; }, [hi_y](double) { return hi_y; }};
}

inline Domain2D y_section(double lo_x, double hi_x, std::function<double(double)> y_lo,
                          std::function<double(double)> y_hi) {
    return {lo_x, hi_x, std::move(y_lo), std::move(y_hi)};
}

/// Iterated adaptive integration: outer axis x, inner axis y. Inner
/// integrals run at a tenfold tighter tolerance; their worst error is
/// folded into the reported estimate.
template <typename F>
IntegralResult integrate_2d(F&& f, const Domain2D& domain, const QuadratureSpec& spec = {}) {
    spec.validate();
    QuadratureSpec base_inner = spec;
    base_inner.rel_tol = spec.rel_tol * 0.1;
    base_inner.abs_tol = spec.abs_tol * 0.1;

    long inner_evals = 0;
    double max_inner_err = 0.0;
    bool inner_converged = true;
    const bool outer_transformed = std::isinf(domain.hi_x);

    auto outer_integrand = [&](double x) {
        const double ylo = domain.y_lo(x);
        const double yhi = domain.y_hi(x);
        if (!(ylo < yhi)) return 0.0;
        QuadratureSpec inner_spec = base_inner;
        if (outer_transformed) {
            // The outer change of variables multiplies an inner absolute
            // error by the Jacobian; shrink the inner absolute target so
            // the product stays below the requested tolerance.
            const double offset = x - domain.lo_x;
            const double jac = spec.transform == Transform::log_map
                                   ? std::exp(std::min(offset, 600.0))
                                   : (1.0 + offset) * (1.0 + offset);
            inner_spec.abs_tol = std::max(1e-280, base_inner.abs_tol / jac);
        }
        auto slice = [&](double y) { return f(x, y); };
        double value = 0.0;
        double split = domain.y_split ? domain.y_split(x) : ylo;
        if (domain.y_split && ylo < split && split < yhi) {
            IntegralResult left = integrate_1d(slice, ylo, split, inner_spec);
            IntegralResult right = integrate_1d(slice, split, yhi, inner_spec);
            value = left.value + right.value;
            inner_evals += left.evaluations + right.evaluations;
            max_inner_err =
                std::max(max_inner_err, left.error_estimate + right.error_estimate);
            inner_converged = inner_converged && left.converged && right.converged;
        } else {
            IntegralResult inner = integrate_1d(slice, ylo, yhi, inner_spec);
            value = inner.value;
            inner_evals += inner.evaluations;
            max_inner_err = std::max(max_inner_err, inner.error_estimate);
            inner_converged = inner_converged && inner.converged;
        }
        return value;
    };

    IntegralResult outer = integrate_1d(outer_integrand, domain.lo_x, domain.hi_x, spec);
    const double x_measure =
        std::isinf(domain.hi_x) ? 1.0 : (domain.hi_x - domain.lo_x);
    IntegralResult out;
    out.value = outer.value;
    out.error_estimate = outer.error_estimate + max_inner_err * x_measure;
    out.evaluations = inner_evals;
    out.converged = outer.converged && inner_converged;
    return out;
}

} // namespace lifeinfo
