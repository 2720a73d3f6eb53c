#pragma once

// The built-in bivariate model catalog: the linear density on the unit
// square, the uniform triangle, the Gumbel-type exponential family, the
// Freund bivariate exponential, Sklar construction from a copula, and
// point reflection of an existing model.

#include <cmath>
#include <stdexcept>

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/copula.hpp"
#include "lifeinfo/special.hpp"

namespace lifeinfo {

/// f(x,y) = x + y on [0,1]^2, F(x,y) = xy(x+y)/2.
inline BivariateLifetimeModel make_linear_unit_square() {
    BivariateLifetimeModel m;
    m.name = "linear";
    m.support = {Support::Kind::rectangle, 1.0, 1.0, nullptr, nullptr};
    m.pdf = [](double x, double y) {
        return (x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0) ? x + y : 0.0;
    };
    auto FX = [](double x) {
        const double a = detail::clamp01(x);
        return a * (a + 1.0) / 2.0;
    };
    m.cdf = [](double x, double y) {
        const double a = detail::clamp01(x);
        const double b = detail::clamp01(y);
        return a * b * (a + b) / 2.0;
    };
    m.survival = [FX, cdf = m.cdf](double x, double y) {
        const double a = detail::clamp01(std::max(0.0, x));
        const double b = detail::clamp01(std::max(0.0, y));
        return std::max(0.0, 1.0 - FX(a) - FX(b) + cdf(a, b));
    };
    m.marginal_cdf_x = FX;
    m.marginal_cdf_y = FX;
    m.marginal_pdf_x = [](double x) {
        return (x >= 0.0 && x <= 1.0) ? x + 0.5 : 0.0;
    };
    m.marginal_pdf_y = m.marginal_pdf_x;
    m.marginal_quantile_x = [](double p) {
        return (-1.0 + std::sqrt(1.0 + 8.0 * detail::clamp01(p))) / 2.0;
    };
    m.marginal_quantile_y = m.marginal_quantile_x;
    m.lower_section_x = [](double x, double t) {
        if (x < 0.0 || x > 1.0) return 0.0;
        const double tc = detail::clamp01(t);
        return x * tc + tc * tc / 2.0;
    };
    m.lower_section_y = m.lower_section_x;
    m.upper_section_x = [](double x, double t) {
        if (x < 0.0 || x > 1.0) return 0.0;
        const double tc = detail::clamp01(t);
        return x * (1.0 - tc) + (1.0 - tc * tc) / 2.0;
    };
    m.upper_section_y = m.upper_section_x;
    return m;
}

/// Uniform density 2*alpha*beta on the triangle alpha*x + beta*y <= 1,
/// with joint survival (1 - alpha*x - beta*y)^2.
inline BivariateLifetimeModel make_uniform_triangle(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("make_uniform_triangle: alpha, beta > 0 required");
    BivariateLifetimeModel m;
    m.name = "triangle";
    m.support.kind = Support::Kind::triangle;
    m.support.x_max = 1.0 / alpha;
    m.support.y_max = 1.0 / beta;
    m.support.y_upper = [alpha, beta](double x) { return (1.0 - alpha * x) / beta; };
    m.pdf = [alpha, beta](double x, double y) {
        return (x >= 0.0 && y >= 0.0 && alpha * x + beta * y <= 1.0) ? 2.0 * alpha * beta
                                                                     : 0.0;
    };
    m.survival = [alpha, beta](double x, double y) {
        const double z = 1.0 - alpha * std::max(0.0, x) - beta * std::max(0.0, y);
        return z > 0.0 ? z * z : 0.0;
    };
    auto FX = [alpha](double x) {
        const double z = 1.0 - alpha * detail::clamp(x, 0.0, 1.0 / alpha);
        return 1.0 - z * z;
    };
    auto FY = [beta](double y) {
        const double z = 1.0 - beta * detail::clamp(y, 0.0, 1.0 / beta);
        return 1.0 - z * z;
    };
    m.marginal_cdf_x = FX;
    m.marginal_cdf_y = FY;
    m.cdf = [FX, FY, surv = m.survival](double x, double y) {
        return std::max(0.0, FX(x) + FY(y) - 1.0 + surv(x, y));
    };
    m.marginal_pdf_x = [alpha](double x) {
        return (x >= 0.0 && x <= 1.0 / alpha) ? 2.0 * alpha * (1.0 - alpha * x) : 0.0;
    };
    m.marginal_pdf_y = [beta](double y) {
        return (y >= 0.0 && y <= 1.0 / beta) ? 2.0 * beta * (1.0 - beta * y) : 0.0;
    };
    m.marginal_quantile_x = [alpha](double p) {
        return (1.0 - std::sqrt(1.0 - detail::clamp01(p))) / alpha;
    };
    m.marginal_quantile_y = [beta](double p) {
        return (1.0 - std::sqrt(1.0 - detail::clamp01(p))) / beta;
    };
    m.lower_section_x = [alpha, beta](double x, double t) {
        if (x < 0.0 || alpha * x >= 1.0) return 0.0;
        const double y_up = (1.0 - alpha * x) / beta;
        return 2.0 * alpha * beta * detail::clamp(t, 0.0, y_up);
    };
    m.upper_section_x = [alpha, beta](double x, double t) {
        if (x < 0.0 || alpha * x >= 1.0) return 0.0;
        const double y_up = (1.0 - alpha * x) / beta;
        return 2.0 * alpha * beta * std::max(0.0, y_up - std::max(0.0, t));
    };
    m.lower_section_y = [alpha, beta](double y, double s) {
        if (y < 0.0 || beta * y >= 1.0) return 0.0;
        const double x_up = (1.0 - beta * y) / alpha;
        return 2.0 * alpha * beta * detail::clamp(s, 0.0, x_up);
    };
    m.upper_section_y = [alpha, beta](double y, double s) {
        if (y < 0.0 || beta * y >= 1.0) return 0.0;
        const double x_up = (1.0 - beta * y) / alpha;
        return 2.0 * alpha * beta * std::max(0.0, x_up - std::max(0.0, s));
    };
    return m;
}

/// Gumbel-type bivariate exponential with survival function
/// Gamma(0, (1+tx)(1+ty)/t) / Gamma(0, 1/t), t = theta.
inline BivariateLifetimeModel make_gumbel_type(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("make_gumbel_type: theta > 0 required");
    const double norm = exponential_integral_e1(1.0 / theta);
    BivariateLifetimeModel m;
    m.name = "gumbel";
    m.support = {Support::Kind::rectangle, kInf, kInf, nullptr, nullptr};
    m.pdf = [theta, norm](double x, double y) {
        if (x < 0.0 || y < 0.0) return 0.0;
        return theta / norm * std::exp(-(1.0 + theta * x) * (1.0 + theta * y) / theta);
    };
    m.survival = [theta, norm](double x, double y) {
        const double xc = std::max(0.0, x);
        const double yc = std::max(0.0, y);
        const double z = (1.0 + theta * xc) * (1.0 + theta * yc) / theta;
        return exponential_integral_e1(z) / norm;
    };
    auto FbarX = [theta, norm](double x) {
        return exponential_integral_e1(std::max(0.0, x) + 1.0 / theta) / norm;
    };
    m.marginal_cdf_x = [FbarX](double x) { return x <= 0.0 ? 0.0 : 1.0 - FbarX(x); };
    m.marginal_cdf_y = m.marginal_cdf_x;
    m.marginal_pdf_x = [theta, norm](double x) {
        if (x < 0.0) return 0.0;
        const double z = x + 1.0 / theta;
        return std::exp(-z) / z / norm;
    };
    m.marginal_pdf_y = m.marginal_pdf_x;
    m.cdf = [surv = m.survival, Fm = m.marginal_cdf_x](double x, double y) {
        if (x <= 0.0 || y <= 0.0) return 0.0;
        return std::max(0.0, Fm(x) + Fm(y) - 1.0 + surv(x, y));
    };
    m.marginal_quantile_x = quantile_by_bisection(m.marginal_cdf_x, kInf);
    m.marginal_quantile_y = m.marginal_quantile_x;
    // int_t^inf f(x,v) dv = (theta/norm) exp(-(1+tx)(1+tt)/t) / (1+tx)
    m.upper_section_x = [theta, norm](double x, double t) {
        if (x < 0.0) return 0.0;
        const double tc = std::max(0.0, t);
        const double a = 1.0 + theta * x;
        return theta / norm * std::exp(-a * (1.0 + theta * tc) / theta) / a;
    };
    m.upper_section_y = m.upper_section_x;
    m.lower_section_x = [up = m.upper_section_x](double x, double t) {
        if (t <= 0.0) return 0.0;
        return std::max(0.0, up(x, 0.0) - up(x, t));
    };
    m.lower_section_y = m.lower_section_x;
    return m;
}

struct FreundParams {
    double alpha = 1.0;       // failure rate of the first component
    double beta = 1.0;        // failure rate of the second component
    double alpha_prime = 1.0; // rate of the first after the second failed
    double beta_prime = 1.0;  // rate of the second after the first failed
};

/// Freund bivariate exponential; possesses the bivariate lack of memory
/// property. Requires alpha+beta != alpha' and alpha+beta != beta'.
inline BivariateLifetimeModel make_freund(const FreundParams& p) {
    const double a = p.alpha, b = p.beta, ap = p.alpha_prime, bp = p.beta_prime;
    if (!(a > 0.0 && b > 0.0 && ap > 0.0 && bp > 0.0))
        throw std::invalid_argument("make_freund: all rates must be positive");
    const double d = a + b - bp; // x<=y branch denominator
    const double g = a + b - ap; // y<=x branch denominator
    if (d == 0.0 || g == 0.0)
        throw std::invalid_argument(
            "make_freund: alpha+beta must differ from alpha' and beta'");

    BivariateLifetimeModel m;
    m.name = "freund";
    m.support.kind = Support::Kind::rectangle;
    m.support.y_kink = [](double x) { return x; }; // piecewise seam on the diagonal
    m.pdf = [a, b, ap, bp](double x, double y) {
        if (x < 0.0 || y < 0.0) return 0.0;
        if (x < y) return a * bp * std::exp(-bp * y - (a + b - bp) * x);
        return b * ap * std::exp(-ap * x - (a + b - ap) * y);
    };
    m.survival = [a, b, ap, bp, d, g](double x, double y) {
        const double xc = std::max(0.0, x);
        const double yc = std::max(0.0, y);
        double v;
        if (xc <= yc)
            v = (a / d) * std::exp(-bp * yc - d * xc) + ((b - bp) / d) * std::exp(-(a + b) * yc);
        else
            v = (b / g) * std::exp(-ap * xc - g * yc) + ((a - ap) / g) * std::exp(-(a + b) * xc);
        return std::max(0.0, v);
    };
    auto FbarX = [b, a, ap, g](double x) {
        const double xc = std::max(0.0, x);
        return (b / g) * std::exp(-ap * xc) + ((a - ap) / g) * std::exp(-(a + b) * xc);
    };
    auto FbarY = [a, b, bp, d](double y) {
        const double yc = std::max(0.0, y);
        return (a / d) * std::exp(-bp * yc) + ((b - bp) / d) * std::exp(-(a + b) * yc);
    };
    m.marginal_cdf_x = [FbarX](double x) {
        return x <= 0.0 ? 0.0 : detail::clamp01(1.0 - FbarX(x));
    };
    m.marginal_cdf_y = [FbarY](double y) {
        return y <= 0.0 ? 0.0 : detail::clamp01(1.0 - FbarY(y));
    };
    m.marginal_pdf_x = [a, b, ap, g](double x) {
        if (x < 0.0) return 0.0;
        return (b * ap / g) * std::exp(-ap * x) +
               ((a + b) * (a - ap) / g) * std::exp(-(a + b) * x);
    };
    m.marginal_pdf_y = [a, b, bp, d](double y) {
        if (y < 0.0) return 0.0;
        return (a * bp / d) * std::exp(-bp * y) +
               ((a + b) * (b - bp) / d) * std::exp(-(a + b) * y);
    };
    m.cdf = [surv = m.survival, fx = m.marginal_cdf_x, fy = m.marginal_cdf_y](double x,
                                                                              double y) {
        if (x <= 0.0 || y <= 0.0) return 0.0;
        return std::max(0.0, fx(x) + fy(y) - 1.0 + surv(x, y));
    };
    m.marginal_quantile_x = quantile_by_bisection(m.marginal_cdf_x, kInf);
    m.marginal_quantile_y = quantile_by_bisection(m.marginal_cdf_y, kInf);
    m.upper_section_x = [a, b, ap, bp, g](double x, double t) {
        if (x < 0.0) return 0.0;
        const double tc = std::max(0.0, t);
        if (x <= tc) return a * std::exp(-bp * tc - (a + b - bp) * x);
        return (b * ap / g) * std::exp(-ap * x) *
                   (std::exp(-g * tc) - std::exp(-g * x)) +
               a * std::exp(-(a + b) * x);
    };
    m.upper_section_y = [a, b, ap, bp, d](double y, double s) {
        if (y < 0.0) return 0.0;
        const double sc = std::max(0.0, s);
        if (y <= sc) return b * std::exp(-ap * sc - (a + b - ap) * y);
        return (a * bp / d) * std::exp(-bp * y) *
                   (std::exp(-d * sc) - std::exp(-d * y)) +
               b * std::exp(-(a + b) * y);
    };
    m.lower_section_x = [up = m.upper_section_x, f = m.marginal_pdf_x](double x, double t) {
        if (t <= 0.0) return 0.0;
        return std::max(0.0, f(x) - up(x, t));
    };
    m.lower_section_y = [up = m.upper_section_y, f = m.marginal_pdf_y](double y, double s) {
        if (s <= 0.0) return 0.0;
        return std::max(0.0, f(y) - up(y, s));
    };
    return m;
}

/// Sklar construction: F(x,y) = C(FX(x), FY(y)) with the given marginals.
inline BivariateLifetimeModel make_from_copula(const Copula& cop, const UnivariateModel& mx,
                                               const UnivariateModel& my) {
    Copula c = finalize_copula(cop);
    BivariateLifetimeModel m;
    m.name = "copula-" + c.name + "-" + mx.name + "-" + my.name;
    m.support = {Support::Kind::rectangle, mx.x_max, my.x_max, nullptr, nullptr};
    m.pdf = [c, mx, my](double x, double y) {
        const double fx = mx.pdf(x);
        const double fy = my.pdf(y);
        if (fx <= 0.0 || fy <= 0.0) return 0.0;
        return fx * fy * c.density(mx.cdf(x), my.cdf(y));
    };
    m.cdf = [c, mx, my](double x, double y) { return c.C(mx.cdf(x), my.cdf(y)); };
    m.survival = [c, mx, my](double x, double y) {
        const double u = mx.cdf(std::max(0.0, x));
        const double v = my.cdf(std::max(0.0, y));
        return std::max(0.0, 1.0 - u - v + c.C(u, v));
    };
    m.marginal_cdf_x = mx.cdf;
    m.marginal_cdf_y = my.cdf;
    m.marginal_pdf_x = mx.pdf;
    m.marginal_pdf_y = my.pdf;
    m.marginal_quantile_x = mx.quantile;
    m.marginal_quantile_y = my.quantile;
    m.lower_section_x = [c, mx, my](double x, double t) {
        const double fx = mx.pdf(x);
        if (fx <= 0.0 || t <= 0.0) return 0.0;
        return fx * c.partial_u(mx.cdf(x), my.cdf(t));
    };
    m.upper_section_x = [c, mx, my](double x, double t) {
        const double fx = mx.pdf(x);
        if (fx <= 0.0) return 0.0;
        return fx * std::max(0.0, 1.0 - c.partial_u(mx.cdf(x), my.cdf(std::max(0.0, t))));
    };
    m.lower_section_y = [c, mx, my](double y, double s) {
        const double fy = my.pdf(y);
        if (fy <= 0.0 || s <= 0.0) return 0.0;
        return fy * c.partial_v(mx.cdf(s), my.cdf(y));
    };
    m.upper_section_y = [c, mx, my](double y, double s) {
        const double fy = my.pdf(y);
        if (fy <= 0.0) return 0.0;
        return fy * std::max(0.0, 1.0 - c.partial_v(mx.cdf(std::max(0.0, s)), my.cdf(y)));
    };
    return m;
}

/// Point reflection about (x0,y0): the returned model has density
/// f_UV(x,y) = f(2*x0 - x, 2*y0 - y). The source support must fit inside
/// [0,2*x0] x [0,2*y0].
inline BivariateLifetimeModel make_reflected(const BivariateLifetimeModel& src, double x0,
                                             double y0) {
    if (src.support.x_max > 2.0 * x0 || src.support.y_max > 2.0 * y0)
        throw std::invalid_argument(
            "make_reflected: source support exceeds the reflected quadrant");
    const double X = 2.0 * x0, Y = 2.0 * y0;
    BivariateLifetimeModel m;
    m.name = src.name + "-reflected";
    m.support.kind = Support::Kind::curvilinear;
    m.support.x_max = X;
    m.support.y_max = Y;
    if (src.support.y_upper) {
        auto yup = src.support.y_upper;
        m.support.y_lower = [yup, X, Y](double x) { return std::max(0.0, Y - yup(X - x)); };
    }
    if (src.support.y_kink) {
        auto kink = src.support.y_kink;
        m.support.y_kink = [kink, X, Y](double x) { return Y - kink(X - x); };
    }
    m.pdf = [src, X, Y](double x, double y) {
        if (x < 0.0 || y < 0.0 || x > X || y > Y) return 0.0;
        return src.pdf(X - x, Y - y);
    };
    m.cdf = [src, X, Y](double x, double y) { return src.survival(X - x, Y - y); };
    m.survival = [src, X, Y](double x, double y) {
        return src.cdf(X - std::max(0.0, x), Y - std::max(0.0, y));
    };
    m.marginal_cdf_x = [src, X](double x) {
        return detail::clamp01(1.0 - src.marginal_cdf_x(X - x));
    };
    m.marginal_cdf_y = [src, Y](double y) {
        return detail::clamp01(1.0 - src.marginal_cdf_y(Y - y));
    };
    m.marginal_pdf_x = [src, X](double x) { return src.marginal_pdf_x(X - x); };
    m.marginal_pdf_y = [src, Y](double y) { return src.marginal_pdf_y(Y - y); };
    m.marginal_quantile_x = [src, X](double p) {
        return X - src.marginal_quantile_x(1.0 - p);
    };
    m.marginal_quantile_y = [src, Y](double p) {
        return Y - src.marginal_quantile_y(1.0 - p);
    };
    m.lower_section_x = [src, X, Y](double x, double t) {
        return std::max(0.0, src.upper_section_x(X - x, Y - std::min(t, Y)) -
                                 src.upper_section_x(X - x, Y));
    };
    m.upper_section_x = [src, X, Y](double x, double t) {
        return src.lower_section_x(X - x, Y - std::max(0.0, t));
    };
    m.lower_section_y = [src, X, Y](double y, double s) {
        return std::max(0.0, src.upper_section_y(Y - y, X - std::min(s, X)) -
                                 src.upper_section_y(Y - y, X));
    };
    m.upper_section_y = [src, X, Y](double y, double s) {
        return src.lower_section_y(Y - y, X - std::max(0.0, s));
    };
    return m;
}

} // namespace lifeinfo
