#pragma once

// Time-transformed exponential (TTE) models: joint survival
// Fbar(s,t) = Wbar[R1(s) + R2(t)], with the time transform Wbar convex,
// strictly decreasing, Wbar(0)=1, and accumulated hazards R1, R2. The
// truncated variant has Wbar reaching 0 at a finite omega with
// Wbar'(omega) = 0.

#include <cmath>
#include <functional>
#include <string>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/errors.hpp"

namespace lifeinfo {

struct TTEModel {
    std::string name = "tte";
    std::function<double(double)> W_bar, W_bar_d1, W_bar_d2;
    std::function<double(double)> W_bar_inv; // optional; bisection otherwise
    std::function<double(double)> R1, R2, R1_d1, R2_d1, R1_inv, R2_inv;
    double omega = kInf;

    bool truncated() const { return std::isfinite(omega); }
    // Derivative extended by 0 beyond the truncation point, so that
    // section integrals stay valid across the boundary.
    double w1_ext(double z) const { return z >= omega ? 0.0 : W_bar_d1(z); }
    double w0_ext(double z) const { return z >= omega ? 0.0 : W_bar(z); }
    double w2_ext(double z) const { return z >= omega ? 0.0 : W_bar_d2(z); }
};

/// Validate the structural TTE assumptions on a probe grid and return the
/// model. Throws InvalidTTE on any violation.
inline TTEModel make_tte(TTEModel m) {
    if (!m.W_bar || !m.W_bar_d1 || !m.W_bar_d2 || !m.R1 || !m.R2 || !m.R1_d1 || !m.R2_d1 ||
        !m.R1_inv || !m.R2_inv)
        throw InvalidTTE("make_tte: W_bar (with derivatives), R1/R2 (with derivatives "
                         "and inverses) are all required");
    if (std::fabs(m.W_bar(0.0) - 1.0) > 1e-8) throw InvalidTTE("W_bar(0) != 1");
    if (std::fabs(m.R1(0.0)) > 1e-12 || std::fabs(m.R2(0.0)) > 1e-12)
        throw InvalidTTE("R1(0) and R2(0) must be 0");

    double r_hi = m.omega;
    if (!std::isfinite(r_hi)) {
        r_hi = 1.0;
        while (m.W_bar(r_hi) > 1e-4 && r_hi < 1e6) r_hi *= 2.0;
    }
    const int n_probe = 24;
    double prev = m.W_bar(0.0);
    for (int i = 1; i <= n_probe; ++i) {
        const double z = r_hi * i / n_probe;
        const double w = m.W_bar(z);
        if (!(w < prev + 1e-14)) throw InvalidTTE("W_bar is not strictly decreasing");
        if (m.W_bar_d2(z * (n_probe - 0.5) / n_probe) < -1e-9)
            throw InvalidTTE("W_bar is not convex");
        prev = w;
    }
    for (int i = 1; i <= 8; ++i) {
        const double s = 0.25 * i;
        if (!(m.R1(s) > m.R1(s - 0.25) && m.R2(s) > m.R2(s - 0.25)))
            throw InvalidTTE("R1/R2 must be strictly increasing");
        if (std::fabs(m.R1_inv(m.R1(s)) - s) > 1e-8 ||
            std::fabs(m.R2_inv(m.R2(s)) - s) > 1e-8)
            throw InvalidTTE("R inverse inconsistent with R");
    }
    if (m.truncated()) {
        if (std::fabs(m.W_bar(m.omega)) > 1e-9) throw InvalidTTE("W_bar(omega) != 0");
        if (std::fabs(m.W_bar_d1(m.omega)) > 1e-6)
            throw InvalidTTE("W_bar'(omega) != 0 (required by the truncated model)");
    }
    if (!m.W_bar_inv) {
        auto W = m.W_bar;
        const double cap = std::isfinite(m.omega) ? m.omega : kInf;
        m.W_bar_inv = [W, cap](double u) {
            double hi = std::isfinite(cap) ? cap : 1.0;
            if (!std::isfinite(cap)) {
                while (W(hi) > u && hi < 1e308) hi *= 2.0;
            }
            double lo = 0.0;
            for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
                const double mid = 0.5 * (lo + hi);
                (W(mid) > u ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        };
    }
    return m;
}

/// Lomax (bivariate Pareto II): Wbar(x) = (1+x)^(-r), R1(s) = alpha*s,
/// R2(t) = beta*t.
inline TTEModel make_lomax_tte(double r, double alpha, double beta) {
    if (!(r > 0.0 && alpha > 0.0 && beta > 0.0))
        throw std::invalid_argument("make_lomax_tte: r, alpha, beta > 0 required");
    TTEModel m;
    m.name = "lomax-tte";
    m.W_bar = [r](double x) { return std::pow(1.0 + x, -r); };
    m.W_bar_d1 = [r](double x) { return -r * std::pow(1.0 + x, -r - 1.0); };
    m.W_bar_d2 = [r](double x) { return r * (r + 1.0) * std::pow(1.0 + x, -r - 2.0); };
    m.W_bar_inv = [r](double u) { return std::pow(u, -1.0 / r) - 1.0; };
    m.R1 = [alpha](double s) { return alpha * s; };
    m.R1_d1 = [alpha](double) { return alpha; };
    m.R1_inv = [alpha](double z) { return z / alpha; };
    m.R2 = [beta](double t) { return beta * t; };
    m.R2_d1 = [beta](double) { return beta; };
    m.R2_inv = [beta](double z) { return z / beta; };
    return make_tte(std::move(m));
}

/// Truncated TTE with Wbar(x) = (x/omega - 1)^2 on [0, omega].
inline TTEModel make_truncated_quadratic_tte(double omega, double alpha = 1.0,
                                             double beta = 1.0) {
    if (!(omega > 0.0 && alpha > 0.0 && beta > 0.0))
        throw std::invalid_argument(
            "make_truncated_quadratic_tte: omega, alpha, beta > 0 required");
    TTEModel m;
    m.name = "truncated-tte";
    m.omega = omega;
    m.W_bar = [omega](double x) {
        if (x >= omega) return 0.0;
        const double z = x / omega - 1.0;
        return z * z;
    };
    m.W_bar_d1 = [omega](double x) {
        return x >= omega ? 0.0 : 2.0 * (x / omega - 1.0) / omega;
    };
    m.W_bar_d2 = [omega](double x) { return x >= omega ? 0.0 : 2.0 / (omega * omega); };
    m.W_bar_inv = [omega](double u) { return omega * (1.0 - std::sqrt(u)); };
    m.R1 = [alpha](double s) { return alpha * s; };
    m.R1_d1 = [alpha](double) { return alpha; };
    m.R1_inv = [alpha](double z) { return z / alpha; };
    m.R2 = [beta](double t) { return beta * t; };
    m.R2_d1 = [beta](double) { return beta; };
    m.R2_inv = [beta](double z) { return z / beta; };
    return make_tte(std::move(m));
}

/// BivariateLifetimeModel view of a TTE model, all pieces analytic.
inline BivariateLifetimeModel to_bivariate(const TTEModel& t) {
    BivariateLifetimeModel m;
    m.name = t.name;
    if (t.truncated()) {
        m.support.kind = Support::Kind::curvilinear;
        m.support.x_max = t.R1_inv(t.omega);
        m.support.y_max = t.R2_inv(t.omega);
        m.support.y_upper = [t](double x) {
            const double rem = t.omega - t.R1(x);
            return rem <= 0.0 ? 0.0 : t.R2_inv(rem);
        };
    }
    m.pdf = [t](double x, double y) {
        if (x < 0.0 || y < 0.0) return 0.0;
        const double z = t.R1(x) + t.R2(y);
        if (z >= t.omega) return 0.0;
        return t.W_bar_d2(z) * t.R1_d1(x) * t.R2_d1(y);
    };
    m.survival = [t](double x, double y) {
        return t.w0_ext(t.R1(std::max(0.0, x)) + t.R2(std::max(0.0, y)));
    };
    m.marginal_cdf_x = [t](double x) {
        return x <= 0.0 ? 0.0 : 1.0 - t.w0_ext(t.R1(x));
    };
    m.marginal_cdf_y = [t](double y) {
        return y <= 0.0 ? 0.0 : 1.0 - t.w0_ext(t.R2(y));
    };
    m.marginal_pdf_x = [t](double x) {
        return x < 0.0 ? 0.0 : -t.w1_ext(t.R1(x)) * t.R1_d1(x);
    };
    m.marginal_pdf_y = [t](double y) {
        return y < 0.0 ? 0.0 : -t.w1_ext(t.R2(y)) * t.R2_d1(y);
    };
    m.cdf = [t](double x, double y) {
        if (x <= 0.0 || y <= 0.0) return 0.0;
        return std::max(0.0, 1.0 - t.w0_ext(t.R1(x)) - t.w0_ext(t.R2(y)) +
                                 t.w0_ext(t.R1(x) + t.R2(y)));
    };
    m.marginal_quantile_x = [t](double p) {
        return t.R1_inv(t.W_bar_inv(1.0 - detail::clamp01(p)));
    };
    m.marginal_quantile_y = [t](double p) {
        return t.R2_inv(t.W_bar_inv(1.0 - detail::clamp01(p)));
    };
    m.lower_section_x = [t](double x, double y) {
        if (x < 0.0 || y <= 0.0) return 0.0;
        const double r1 = t.R1(x);
        if (r1 >= t.omega) return 0.0;
        return t.R1_d1(x) * (t.w1_ext(r1 + t.R2(y)) - t.w1_ext(r1));
    };
    m.upper_section_x = [t](double x, double y) {
        if (x < 0.0) return 0.0;
        const double r1 = t.R1(x);
        if (r1 >= t.omega) return 0.0;
        return -t.R1_d1(x) * t.w1_ext(r1 + t.R2(std::max(0.0, y)));
    };
    m.lower_section_y = [t](double y, double x) {
        if (y < 0.0 || x <= 0.0) return 0.0;
        const double r2 = t.R2(y);
        if (r2 >= t.omega) return 0.0;
        return t.R2_d1(y) * (t.w1_ext(r2 + t.R1(x)) - t.w1_ext(r2));
    };
    m.upper_section_y = [t](double y, double x) {
        if (y < 0.0) return 0.0;
        const double r2 = t.R2(y);
        if (r2 >= t.omega) return 0.0;
        return -t.R2_d1(y) * t.w1_ext(r2 + t.R1(std::max(0.0, x)));
    };
    return m;
}

} // namespace lifeinfo
