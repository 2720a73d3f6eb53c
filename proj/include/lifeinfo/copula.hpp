#pragma once

// Copulas on [0,1]^2: C(u,v), the density c(u,v), and the section
// integrals dC/du = int_0^v c(u,.) and dC/dv = int_0^u c(.,v) that MI
// integrands divide by.

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "lifeinfo/quadrature.hpp"

namespace lifeinfo {

struct Copula {
    std::string name;
    std::function<double(double, double)> C;
    std::function<double(double, double)> density;
    // partial_u(u,v) = dC/du = int_0^v c(u,w) dw; likewise partial_v.
    std::function<double(double, double)> partial_u;
    std::function<double(double, double)> partial_v;
};

/// Mixed finite difference of C with Richardson extrapolation, for
/// copulas defined by C alone.
inline double copula_density_fd(const std::function<double(double, double)>& C, double u,
                                double v, double h = 1e-5) {
    auto mixed = [&](double step) {
        return (C(u + step, v + step) - C(u + step, v - step) - C(u - step, v + step) +
                C(u - step, v - step)) /
               (4.0 * step * step);
    };
    const double d1 = mixed(h);
    const double d2 = mixed(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

/// Fill a partially specified copula: density from finite differences of
/// C, section integrals from quadrature of the density.
inline Copula finalize_copula(Copula c) {
    if (!c.density) {
        auto C = c.C;
        c.density = [C](double u, double v) { return copula_density_fd(C, u, v); };
    }
    if (!c.partial_u) {
        auto dens = c.density;
        c.partial_u = [dens](double u, double v) {
            if (v <= 0.0) return 0.0;
            QuadratureSpec spec;
            spec.rel_tol = 1e-9;
            return integrate_1d([&](double w) { return dens(u, w); }, 0.0, v, spec).value;
        };
    }
    if (!c.partial_v) {
        auto dens = c.density;
        c.partial_v = [dens](double u, double v) {
            if (u <= 0.0) return 0.0;
            QuadratureSpec spec;
            spec.rel_tol = 1e-9;
            return integrate_1d([&](double z) { return dens(z, v); }, 0.0, u, spec).value;
        };
    }
    return c;
}

inline Copula independence_copula() {
    Copula c;
    c.name = "independence";
    c.C = [](double u, double v) { return u * v; };
    c.density = [](double, double) { return 1.0; };
    c.partial_u = [](double, double v) { return v; };
    c.partial_v = [](double u, double) { return u; };
    return c;
}

/// C(u,v) = uv/(u+v-uv), the Clayton family member with unit parameter.
inline Copula clayton_special() {
    Copula c;
    c.name = "clayton-special";
    c.C = [](double u, double v) {
        const double den = u + v - u * v;
        return den > 0.0 ? u * v / den : 0.0;
    };
    c.density = [](double u, double v) {
        const double den = u + v - u * v;
        return den > 0.0 ? 2.0 * u * v / (den * den * den) : 0.0;
    };
    c.partial_u = [](double u, double v) {
        const double den = u + v - u * v;
        return den > 0.0 ? v * v / (den * den) : 0.0;
    };
    c.partial_v = [](double u, double v) {
        const double den = u + v - u * v;
        return den > 0.0 ? u * u / (den * den) : 0.0;
    };
    return c;
}

/// The copula whose survival copula is the given one (an involution):
/// flip(C)(u,v) = u + v - 1 + C(1-u, 1-v).
inline Copula survival_flip(const Copula& src) {
    Copula c;
    c.name = src.name + "-flipped";
    auto C = src.C;
    auto dens = src.density;
    auto pu = src.partial_u;
    c.C = [C](double u, double v) { return std::max(0.0, u + v - 1.0 + C(1.0 - u, 1.0 - v)); };
    c.density = [dens](double u, double v) { return dens(1.0 - u, 1.0 - v); };
    c.partial_u = [pu](double u, double v) { return 1.0 - pu(1.0 - u, 1.0 - v); };
    auto pv = src.partial_v;
    c.partial_v = [pv](double u, double v) { return 1.0 - pv(1.0 - u, 1.0 - v); };
    return c;
}

/// Survival copula of a copula: Ct(u,v) = u + v - 1 + C(1-u,1-v), with
/// density ct(u,v) = c(1-u,1-v). Reproduces the joint survival function
/// through Fbar(x,y) = Ct(FbarX(x), FbarY(y)).
struct SurvivalCopula {
    std::function<double(double, double)> C;
    std::function<double(double, double)> density;
    std::function<double(double, double)> partial_u;
    std::function<double(double, double)> partial_v;
};

inline SurvivalCopula survival_copula_of(const Copula& src) {
    Copula flipped = survival_flip(src);
    return {flipped.C, flipped.density, flipped.partial_u, flipped.partial_v};
}

} // namespace lifeinfo
