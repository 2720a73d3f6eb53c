#pragma once

// Exponential integral E1(z) = Gamma(0,z), the only special function the
// model catalog needs. Series for z < 1, modified Lentz continued
// fraction for z >= 1; both branches reach ~1e-15 relative accuracy.

#include <cmath>
#include <limits>
#include <string>

#include "lifeinfo/errors.hpp"

namespace lifeinfo {

inline double exponential_integral_e1(double z) {
    if (!(z > 0.0))
        throw SpecialFunctionDomain("E1 requires z > 0, got " + std::to_string(z));

    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    const double eps = std::numeric_limits<double>::epsilon();

    if (z < 1.0) {
        // E1(z) = -gamma - log z - sum_{n>=1} (-z)^n / (n * n!)
        double sum = 0.0;
        double term = 1.0;
        for (int n = 1; n <= 60; ++n) {
            term *= -z / n;
            const double contrib = term / n;
            sum += contrib;
            if (std::fabs(contrib) < eps * std::fabs(sum)) break;
        }
        return -euler_gamma - std::log(z) - sum;
    }

    // E1(z) = exp(-z) / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
    const double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return h * std::exp(-z);
}

/// Upper incomplete gamma at a=0; alias kept to mirror the usual notation.
inline double upper_incomplete_gamma0(double z) { return exponential_integral_e1(z); }

} // namespace lifeinfo
