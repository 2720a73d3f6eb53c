#pragma once

// Univariate lifetime marginals used as copula marginals and as order
// statistic components.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace lifeinfo {

struct UnivariateModel {
    std::string name;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;
    double x_max = std::numeric_limits<double>::infinity();
};

/// Generalized-inverse quantile by bisection on a continuous strictly
/// increasing CDF. Brackets [0, hi] by doubling when the support is
/// unbounded.
inline std::function<double(double)> quantile_by_bisection(
    std::function<double(double)> cdf, double x_max,
    double tol = 1e-12) {
    return [cdf = std::move(cdf), x_max, tol](double p) {
        if (p <= 0.0) return 0.0;
        double hi = std::isinf(x_max) ? 1.0 : x_max;
        if (std::isinf(x_max)) {
            while (cdf(hi) < p && hi < 1e308) hi *= 2.0;
        }
        if (p >= 1.0) return hi;
        double lo = 0.0;
        for (int i = 0; i < 200 && hi - lo > tol * std::max(1.0, hi); ++i) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
}

inline UnivariateModel uniform01() {
    UnivariateModel m;
    m.name = "uniform";
    m.pdf = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
    m.quantile = [](double p) { return p; };
    m.x_max = 1.0;
    return m;
}

inline UnivariateModel exponential(double rate) {
    UnivariateModel m;
    m.name = "exponential";
    m.pdf = [rate](double x) { return x < 0.0 ? 0.0 : rate * std::exp(-rate * x); };
    m.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
    m.quantile = [rate](double p) { return p >= 1.0 ? std::numeric_limits<double>::infinity()
                                                    : -std::log1p(-p) / rate; };
    return m;
}

inline UnivariateModel weibull(double shape, double scale = 1.0) {
    UnivariateModel m;
    m.name = "weibull";
    m.pdf = [shape, scale](double x) {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return shape > 1.0 ? 0.0 : (shape == 1.0 ? 1.0 / scale : 0.0);
        const double z = x / scale;
        return (shape / scale) * std::pow(z, shape - 1.0) * std::exp(-std::pow(z, shape));
    };
    m.cdf = [shape, scale](double x) {
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale, shape));
    };
    m.quantile = [shape, scale](double p) {
        return p >= 1.0 ? std::numeric_limits<double>::infinity()
                        : scale * std::pow(-std::log1p(-p), 1.0 / shape);
    };
    return m;
}

} // namespace lifeinfo
