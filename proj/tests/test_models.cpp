#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lifeinfo/models.hpp"
#include "lifeinfo/quadrature.hpp"

using namespace lifeinfo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double normalization(const BivariateLifetimeModel& m) {
    Domain2D d = support_domain(m);
    return integrate_2d([&](double x, double y) { return m.pdf(x, y); }, d, {}).value;
}

// Four-region identity F + Fbar + F^{-,+} + F^{+,-} = 1 at random (s,t).
void check_four_region_identity(const BivariateLifetimeModel& m, double s_scale,
                                double t_scale, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 50; ++i) {
        const double s = u(rng) * s_scale;
        const double t = u(rng) * t_scale;
        const double total = m.cdf(s, t) + m.survival(s, t) + m.prob_past_residual(s, t) +
                             m.prob_residual_past(s, t);
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-8));
    }
}

void check_mixed_partial(const BivariateLifetimeModel& m, double s_scale, double t_scale,
                         unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    int checked = 0;
    for (int i = 0; i < 60 && checked < 20; ++i) {
        const double x = u(rng) * s_scale;
        const double y = u(rng) * t_scale;
        if (m.pdf(x, y) < 1e-3) continue; // stay inside the support
        ++checked;
        REQUIRE(pdf_vs_mixed_cdf_reldiff(m, x, y) < 1e-4);
    }
    REQUIRE(checked == 20);
}

void check_sections_match_quadrature(const BivariateLifetimeModel& m, double x, double t,
                                     double y, double s) {
    QuadratureSpec spec;
    const double lo_x = integrate_1d([&](double v) { return m.pdf(x, v); }, 0.0,
                                     std::min(t, m.support.y_hi(x)), spec)
                            .value;
    CHECK_THAT(m.lower_section_x(x, t), WithinAbs(lo_x, 1e-8));
    const double up_x =
        integrate_1d([&](double v) { return m.pdf(x, v); }, t, m.support.y_hi(x), spec)
            .value;
    CHECK_THAT(m.upper_section_x(x, t), WithinAbs(up_x, 1e-8));
    const double lo_y = integrate_1d([&](double u2) { return m.pdf(u2, y); }, 0.0,
                                     std::min(s, m.support.x_max), spec)
                            .value;
    CHECK_THAT(m.lower_section_y(y, s), WithinAbs(lo_y, 1e-8));
}

} // namespace

TEST_CASE("linear unit-square model") {
    BivariateLifetimeModel m = make_linear_unit_square();
    CHECK_THAT(m.cdf(1.0, 1.0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(m.pdf(0.5, 0.5), WithinAbs(1.0, 1e-14));
    CHECK_THAT(m.cdf(0.5, 0.5), WithinAbs(0.125, 1e-14));
    CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
    check_four_region_identity(m, 1.0, 1.0, 11);
    check_mixed_partial(m, 1.0, 1.0, 12);
    check_sections_match_quadrature(m, 0.4, 0.6, 0.7, 0.3);
    SECTION("quantile inverts the marginal cdf") {
        for (double p : {0.1, 0.35, 0.5, 0.77, 0.95})
            CHECK_THAT(m.marginal_cdf_x(m.marginal_quantile_x(p)), WithinAbs(p, 1e-12));
    }
}

TEST_CASE("uniform triangle model") {
    SECTION("alpha = beta = 1") {
        BivariateLifetimeModel m = make_uniform_triangle(1.0, 1.0);
        CHECK_THAT(m.survival(0.0, 0.0), WithinAbs(1.0, 1e-14));
        CHECK_THAT(m.pdf(0.25, 0.25), WithinAbs(2.0, 1e-14));
        CHECK(m.pdf(0.7, 0.7) == 0.0);
        CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
        check_four_region_identity(m, 0.5, 0.5, 21);
        check_sections_match_quadrature(m, 0.2, 0.3, 0.25, 0.35);
    }
    SECTION("alpha=2, beta=3") {
        BivariateLifetimeModel m = make_uniform_triangle(2.0, 3.0);
        CHECK_THAT(m.survival(0.25, 0.1), WithinAbs(0.04, 1e-14));
        CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
        check_four_region_identity(m, 0.25, 0.16, 22);
        check_mixed_partial(m, 0.45, 0.30, 23);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(make_uniform_triangle(0.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("gumbel-type model") {
    BivariateLifetimeModel m = make_gumbel_type(1.0);
    CHECK_THAT(m.survival(0.0, 0.0), WithinAbs(1.0, 1e-13));
    // e^{-1} / E1(1), frozen from the high-precision oracle
    CHECK_THAT(m.pdf(0.0, 0.0), WithinRel(1.6768750281787008684, 1e-12));
    CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
    check_four_region_identity(m, 2.0, 2.0, 31);
    check_mixed_partial(m, 1.5, 1.5, 32);
    check_sections_match_quadrature(m, 0.4, 0.8, 0.5, 0.2);
    SECTION("marginal pdf matches the derivative of the marginal cdf") {
        const double h = 1e-6;
        for (double x : {0.2, 0.9, 2.1}) {
            const double fd = (m.marginal_cdf_x(x + h) - m.marginal_cdf_x(x - h)) / (2.0 * h);
            CHECK_THAT(m.marginal_pdf_x(x), WithinRel(fd, 1e-7));
        }
    }
}

TEST_CASE("freund model") {
    FreundParams p{1.2, 0.7, 2.0, 1.6};
    BivariateLifetimeModel m = make_freund(p);
    CHECK_THAT(m.survival(0.0, 0.0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
    // frozen from the symbolic derivation check
    CHECK_THAT(m.survival(0.3, 0.8), WithinRel(0.360292177355, 1e-10));
    CHECK_THAT(m.survival(2.0, 0.1), WithinRel(0.0494681760106, 1e-10));
    check_four_region_identity(m, 2.0, 2.0, 41);
    check_mixed_partial(m, 1.5, 1.5, 42);
    check_sections_match_quadrature(m, 0.3, 0.8, 1.2, 0.4);
    SECTION("BLM identity at probe points") {
        for (double x : {0.3, 0.9})
            for (double y : {0.2, 1.5})
                for (double t : {0.5, 1.1}) {
                    const double lhs = m.survival(x + t, y + t);
                    const double rhs = m.survival(x, y) * m.survival(t, t);
                    CHECK_THAT(lhs, WithinAbs(rhs, 1e-10));
                }
    }
    SECTION("degenerate rates are rejected") {
        CHECK_THROWS_AS(make_freund({1.0, 1.0, 2.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("copula-built models") {
    SECTION("independence copula with exponential marginals factorizes") {
        BivariateLifetimeModel m =
            make_from_copula(independence_copula(), exponential(1.0), exponential(2.0));
        for (double x : {0.3, 1.0})
            for (double y : {0.1, 0.9})
                CHECK_THAT(m.pdf(x, y),
                           WithinRel(std::exp(-x) * 2.0 * std::exp(-2.0 * y), 1e-12));
        CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
    }
    SECTION("clayton-special with uniform marginals") {
        BivariateLifetimeModel m =
            make_from_copula(clayton_special(), uniform01(), uniform01());
        CHECK_THAT(m.cdf(0.5, 0.5), WithinAbs(1.0 / 3.0, 1e-14));
        CHECK_THAT(m.cdf(1.0, 1.0), WithinAbs(1.0, 1e-12));
        CHECK_THAT(normalization(m), WithinAbs(1.0, 1e-6));
        check_four_region_identity(m, 1.0, 1.0, 51);
        check_mixed_partial(m, 1.0, 1.0, 52);
        check_sections_match_quadrature(m, 0.4, 0.6, 0.7, 0.3);
    }
}

TEST_CASE("reflected model") {
    BivariateLifetimeModel tri = make_uniform_triangle(1.0, 1.0);
    BivariateLifetimeModel refl = make_reflected(tri, 0.5, 0.5);
    SECTION("density is the point reflection") {
        for (double x : {0.2, 0.6, 0.9})
            for (double y : {0.3, 0.55, 0.95})
                CHECK_THAT(refl.pdf(x, y), WithinAbs(tri.pdf(1.0 - x, 1.0 - y), 1e-13));
    }
    SECTION("cdf matches the known closed form (x+y-1)^2 on the region") {
        CHECK_THAT(refl.cdf(0.8, 0.7), WithinAbs(0.25, 1e-13));
        CHECK_THAT(refl.cdf(1.0, 1.0), WithinAbs(1.0, 1e-13));
    }
    CHECK_THAT(normalization(refl), WithinAbs(1.0, 1e-6));
    check_four_region_identity(refl, 1.0, 1.0, 61);
    SECTION("sections agree with quadrature") {
        QuadratureSpec spec;
        const double got = refl.lower_section_x(0.7, 0.6);
        const double want =
            integrate_1d([&](double v) { return refl.pdf(0.7, v); }, 0.0, 0.6, spec).value;
        CHECK_THAT(got, WithinAbs(want, 1e-9));
        const double got_up = refl.upper_section_y(0.8, 0.4);
        const double want_up =
            integrate_1d([&](double u) { return refl.pdf(u, 0.8); }, 0.4, 1.0, spec).value;
        CHECK_THAT(got_up, WithinAbs(want_up, 1e-9));
    }
}

TEST_CASE("finalize_model fills missing pieces consistently") {
    // strip everything but the pdf from the linear model, rebuild by quadrature
    BivariateLifetimeModel full = make_linear_unit_square();
    BivariateLifetimeModel bare;
    bare.name = "linear-bare";
    bare.support = full.support;
    bare.pdf = full.pdf;
    BivariateLifetimeModel filled = finalize_model(bare);
    for (double s : {0.3, 0.8})
        for (double t : {0.4, 0.9}) {
            CHECK_THAT(filled.cdf(s, t), WithinAbs(full.cdf(s, t), 1e-8));
            CHECK_THAT(filled.survival(s, t), WithinAbs(full.survival(s, t), 1e-8));
            CHECK_THAT(filled.lower_section_x(s, t),
                       WithinAbs(full.lower_section_x(s, t), 1e-9));
            CHECK_THAT(filled.upper_section_y(t, s),
                       WithinAbs(full.upper_section_y(t, s), 1e-9));
        }
    CHECK_THAT(filled.marginal_quantile_x(0.4),
               WithinAbs(full.marginal_quantile_x(0.4), 1e-8));
    CHECK_THAT(filled.marginal_pdf_x(0.6), WithinAbs(full.marginal_pdf_x(0.6), 1e-9));
}
