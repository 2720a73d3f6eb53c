#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/tte.hpp"

using namespace lifeinfo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lomax TTE") {
    TTEModel t = make_lomax_tte(1.0, 1.0, 1.0);
    BivariateLifetimeModel m = to_bivariate(t);
    CHECK_THAT(m.survival(0.0, 0.0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(m.survival(1.0, 1.0), WithinAbs(1.0 / 3.0, 1e-14));
    SECTION("pdf is the mixed derivative identity") {
        for (double s : {0.2, 1.5})
            for (double tt : {0.4, 2.0})
                CHECK(pdf_vs_mixed_cdf_reldiff(m, s, tt, 1e-4) < 1e-4);
    }
    SECTION("normalization") {
        Domain2D d = rectangle(0.0, kInf, 0.0, kInf);
        IntegralResult r = integrate_2d([&](double x, double y) { return m.pdf(x, y); }, d, {});
        CHECK_THAT(r.value, WithinAbs(1.0, 1e-6));
    }
    SECTION("sections match quadrature") {
        QuadratureSpec spec;
        const double up = integrate_1d([&](double v) { return m.pdf(0.5, v); }, 0.7, kInf, spec).value;
        CHECK_THAT(m.upper_section_x(0.5, 0.7), WithinRel(up, 1e-7));
        const double lo = integrate_1d([&](double v) { return m.pdf(0.5, v); }, 0.0, 0.7, spec).value;
        CHECK_THAT(m.lower_section_x(0.5, 0.7), WithinRel(lo, 1e-7));
    }
    SECTION("marginal quantile closed form") {
        // FbarX(x) = (1+x)^-r  =>  quantile(p) = (1-p)^{-1/r} - 1
        CHECK_THAT(m.marginal_quantile_x(0.75), WithinRel(3.0, 1e-12));
    }
}

TEST_CASE("truncated quadratic TTE") {
    TTEModel t = make_truncated_quadratic_tte(2.0);
    BivariateLifetimeModel m = to_bivariate(t);
    // survival at R1(s)+R2(t)=1 with omega=2: (1/2 - 1)^2 = 1/4
    CHECK_THAT(m.survival(0.4, 0.6), WithinAbs(0.25, 1e-14));
    CHECK_THAT(m.survival(0.0, 0.0), WithinAbs(1.0, 1e-14));
    CHECK(m.pdf(1.5, 0.8) == 0.0); // beyond the truncation boundary
    SECTION("normalization over the curvilinear support") {
        Domain2D d;
        d.lo_x = 0.0;
        d.hi_x = m.support.x_max;
        d.y_lo = [](double) { return 0.0; };
        d.y_hi = [&](double x) { return m.support.y_hi(x); };
        IntegralResult r = integrate_2d([&](double x, double y) { return m.pdf(x, y); }, d, {});
        CHECK_THAT(r.value, WithinAbs(1.0, 1e-8));
    }
    SECTION("boundary curve satisfies R1(s) + R2(l(s)) = omega") {
        for (double s : {0.0, 0.7, 1.9})
            CHECK_THAT(t.R1(s) + t.R2(m.support.y_upper(s)), WithinAbs(2.0, 1e-12));
    }
    SECTION("sections match quadrature inside the wedge") {
        QuadratureSpec spec;
        const double up =
            integrate_1d([&](double v) { return m.pdf(0.5, v); }, 0.3, m.support.y_hi(0.5), spec)
                .value;
        CHECK_THAT(m.upper_section_x(0.5, 0.3), WithinRel(up, 1e-8));
    }
}

TEST_CASE("make_tte validation") {
    SECTION("non-convex transform is rejected") {
        TTEModel bad;
        bad.W_bar = [](double x) { return std::max(0.0, 1.0 - 0.2 * x - 0.2 * x * x); };
        bad.W_bar_d1 = [](double x) { return -0.2 - 0.4 * x; };
        bad.W_bar_d2 = [](double) { return -0.4; };
        bad.R1 = bad.R2 = [](double s) { return s; };
        bad.R1_d1 = bad.R2_d1 = [](double) { return 1.0; };
        bad.R1_inv = bad.R2_inv = [](double z) { return z; };
        CHECK_THROWS_AS(make_tte(bad), InvalidTTE);
    }
    SECTION("W_bar(0) != 1 is rejected") {
        TTEModel bad = make_lomax_tte(1.0, 1.0, 1.0);
        bad.W_bar = [](double x) { return 0.9 * std::pow(1.0 + x, -1.0); };
        CHECK_THROWS_AS(make_tte(bad), InvalidTTE);
    }
    SECTION("truncated transform with nonzero derivative at omega is rejected") {
        TTEModel bad;
        bad.omega = 1.0;
        bad.W_bar = [](double x) { return std::max(0.0, 1.0 - x); }; // W'(1) = -1
        bad.W_bar_d1 = [](double) { return -1.0; };
        bad.W_bar_d2 = [](double) { return 0.0; };
        bad.R1 = bad.R2 = [](double s) { return s; };
        bad.R1_d1 = bad.R2_d1 = [](double) { return 1.0; };
        bad.R1_inv = bad.R2_inv = [](double z) { return z; };
        CHECK_THROWS_AS(make_tte(bad), InvalidTTE);
    }
    SECTION("missing pieces are rejected") {
        TTEModel bad;
        bad.W_bar = [](double x) { return std::exp(-x); };
        CHECK_THROWS_AS(make_tte(bad), InvalidTTE);
    }
}
