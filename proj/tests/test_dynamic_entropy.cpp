#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lifeinfo/dynamic_entropy.hpp"
#include "lifeinfo/models.hpp"

using namespace lifeinfo;
using Catch::Matchers::WithinAbs;

namespace {

double region_mass(const BivariateLifetimeModel& m, const ConditioningRegion& r) {
    Domain2D d = region_domain(m, r);
    return integrate_2d(
               [&](double x, double y) { return conditional_density(m, r, x, y); }, d, {})
        .value;
}

} // namespace

TEST_CASE("conditional densities") {
    SECTION("independent unit exponentials: memoryless residual density") {
        BivariateLifetimeModel m =
            make_from_copula(independence_copula(), exponential(1.0), exponential(1.0));
        ConditioningRegion r{RegionKind::residual_residual, 0.7, 1.3};
        for (double x : {0.1, 0.8})
            for (double y : {0.2, 1.0})
                CHECK_THAT(conditional_density(m, r, x, y),
                           WithinAbs(std::exp(-x) * std::exp(-y), 1e-10));
    }
    SECTION("linear model past density") {
        BivariateLifetimeModel m = make_linear_unit_square();
        ConditioningRegion r{RegionKind::past_past, 1.0, 1.0};
        CHECK_THAT(conditional_density(m, r, 0.5, 0.5), WithinAbs(1.0, 1e-13));
    }
    SECTION("triangle residual density is flat at 2/(1-s-t)^2") {
        BivariateLifetimeModel m = make_uniform_triangle(1.0, 1.0);
        ConditioningRegion r{RegionKind::residual_residual, 0.2, 0.3};
        const double expect = 2.0 / ((1.0 - 0.5) * (1.0 - 0.5));
        CHECK_THAT(conditional_density(m, r, 0.1, 0.15), WithinAbs(expect, 1e-12));
        CHECK(conditional_density(m, r, 0.4, 0.4) == 0.0); // outside the shifted wedge
    }
    SECTION("zero-probability region is rejected") {
        BivariateLifetimeModel m = make_uniform_triangle(1.0, 1.0);
        ConditioningRegion r{RegionKind::residual_residual, 0.8, 0.8};
        CHECK_THROWS_AS(conditional_density(m, r, 0.1, 0.1), ZeroRegionProbability);
    }
    SECTION("conditional densities integrate to one on every region") {
        BivariateLifetimeModel lin = make_linear_unit_square();
        BivariateLifetimeModel tri = make_uniform_triangle(1.0, 1.0);
        BivariateLifetimeModel gum = make_gumbel_type(1.0);
        for (RegionKind kind : {RegionKind::past_past, RegionKind::residual_residual,
                                RegionKind::past_residual, RegionKind::residual_past}) {
            CHECK_THAT(region_mass(lin, {kind, 0.5, 0.6}), WithinAbs(1.0, 1e-6));
            CHECK_THAT(region_mass(tri, {kind, 0.2, 0.3}), WithinAbs(1.0, 1e-6));
            CHECK_THAT(region_mass(gum, {kind, 0.4, 0.7}), WithinAbs(1.0, 1e-6));
        }
    }
}

TEST_CASE("joint entropy") {
    SECTION("triangle residual entropy closed form 2 log(1-s-t) - log 2") {
        BivariateLifetimeModel m = make_uniform_triangle(1.0, 1.0);
        for (auto [s, t] : {std::pair{0.2, 0.3}, std::pair{0.1, 0.5}, std::pair{0.0, 0.0}}) {
            MeasureResult h = joint_entropy(m, {RegionKind::residual_residual, s, t});
            CHECK_THAT(h.value, WithinAbs(2.0 * std::log(1.0 - s - t) - std::log(2.0), 1e-8));
        }
    }
    SECTION("independent unit exponentials: residual entropy is 2 everywhere") {
        BivariateLifetimeModel m =
            make_from_copula(independence_copula(), exponential(1.0), exponential(1.0));
        for (auto [s, t] : {std::pair{0.0, 0.0}, std::pair{0.8, 1.7}}) {
            MeasureResult h = joint_entropy(m, {RegionKind::residual_residual, s, t});
            CHECK_THAT(h.value, WithinAbs(2.0, 1e-7));
        }
    }
    SECTION("linear model past entropy at (1,1): fine-grid oracle value") {
        BivariateLifetimeModel m = make_linear_unit_square();
        MeasureResult h = joint_entropy(m, {RegionKind::past_past, 1.0, 1.0});
        // -II (x+y) log(x+y) dx dy on the unit square, 30-digit oracle
        CHECK_THAT(h.value, WithinAbs(-0.090862907413260412556, 1e-9));
    }
}

TEST_CASE("marginal entropy") {
    SECTION("triangle residual marginal: 1/2 + log((1-s-t)/2)") {
        BivariateLifetimeModel m = make_uniform_triangle(1.0, 1.0);
        for (auto [s, t] : {std::pair{0.2, 0.3}, std::pair{0.05, 0.4}}) {
            MeasureResult h = marginal_entropy(m, {RegionKind::residual_residual, s, t}, Axis::X);
            CHECK_THAT(h.value, WithinAbs(0.5 + std::log((1.0 - s - t) / 2.0), 1e-8));
        }
    }
    SECTION("independent exponentials: residual marginal entropy is 1") {
        BivariateLifetimeModel m =
            make_from_copula(independence_copula(), exponential(1.0), exponential(1.0));
        MeasureResult h = marginal_entropy(m, {RegionKind::residual_residual, 0.3, 0.9}, Axis::X);
        CHECK_THAT(h.value, WithinAbs(1.0, 1e-7));
    }
    SECTION("linear model past axis X at (1,1): 1D oracle for density x + 1/2") {
        BivariateLifetimeModel m = make_linear_unit_square();
        MeasureResult h = marginal_entropy(m, {RegionKind::past_past, 1.0, 1.0}, Axis::X);
        CHECK_THAT(h.value, WithinAbs(-0.042791644191678093402, 1e-10));
    }
    SECTION("joint = sum of marginals for independent components") {
        BivariateLifetimeModel m =
            make_from_copula(independence_copula(), exponential(1.0), exponential(2.0));
        for (RegionKind kind : {RegionKind::past_past, RegionKind::residual_residual,
                                RegionKind::past_residual, RegionKind::residual_past}) {
            ConditioningRegion r{kind, 0.5, 0.4};
            const double hj = joint_entropy(m, r).value;
            const double hx = marginal_entropy(m, r, Axis::X).value;
            const double hy = marginal_entropy(m, r, Axis::Y).value;
            CHECK_THAT(hj, WithinAbs(hx + hy, 1e-5));
        }
    }
}

TEST_CASE("discrete entropy") {
    CHECK(discrete_entropy({1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK_THAT(discrete_entropy({0.25, 0.25, 0.25, 0.25}), WithinAbs(std::log(4.0), 1e-14));
    CHECK_THAT(discrete_entropy({0.5, 0.25, 0.125, 0.125}),
               WithinAbs(1.75 * std::log(2.0), 1e-14));
    CHECK_THROWS_AS(discrete_entropy({0.5, 0.4}), NotAProbabilityVector);
    CHECK_THROWS_AS(discrete_entropy({1.5, -0.5}), NotAProbabilityVector);
}

TEST_CASE("entropy decomposition identity") {
    SECTION("linear model at (0.5,0.5)") {
        DecompositionReport rep = verify_decomposition(make_linear_unit_square(), 0.5, 0.5);
        CHECK(std::fabs(rep.residual) <= 1e-5);
    }
    SECTION("gumbel at (0.3,0.7)") {
        DecompositionReport rep = verify_decomposition(make_gumbel_type(1.0), 0.3, 0.7);
        CHECK(std::fabs(rep.residual) <= 1e-5);
    }
    SECTION("clayton-special with uniform marginals at (0.5,0.5)") {
        BivariateLifetimeModel m =
            make_from_copula(clayton_special(), uniform01(), uniform01());
        DecompositionReport rep = verify_decomposition(m, 0.5, 0.5);
        CHECK(std::fabs(rep.residual) <= 1e-5);
    }
    SECTION("random inspection points across the catalog") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(0.15, 0.6);
        BivariateLifetimeModel models[] = {make_linear_unit_square(), make_gumbel_type(0.7),
                                           make_freund({1.2, 0.7, 2.0, 1.6})};
        for (const auto& m : models)
            for (int i = 0; i < 3; ++i) {
                DecompositionReport rep = verify_decomposition(m, u(rng), u(rng));
                CHECK(std::fabs(rep.residual) <= 1e-5);
            }
        // triangle: keep (s,t) inside the admissible wedge
        BivariateLifetimeModel tri = make_uniform_triangle(1.0, 1.0);
        for (auto [s, t] : {std::pair{0.2, 0.3}, std::pair{0.35, 0.15}, std::pair{0.1, 0.1}}) {
            DecompositionReport rep = verify_decomposition(tri, s, t);
            CHECK(std::fabs(rep.residual) <= 1e-5);
        }
    }
    SECTION("null region is rejected") {
        BivariateLifetimeModel tri = make_uniform_triangle(1.0, 1.0);
        CHECK_THROWS_AS(verify_decomposition(tri, 0.6, 0.6), ZeroRegionProbability);
    }
}
