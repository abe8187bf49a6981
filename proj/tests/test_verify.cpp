#include "support.hpp"

#include <cstring>

using Catch::Approx;
using namespace r4curv;

namespace {
const ToleranceSet tol;
const GridSpec grid{32, 32, 0.02};

const ConditionResult& cond(const VerificationReport& r, const std::string& key) {
    for (const auto& c : r.conditions)
        if (c.key == key) return c;
    throw std::runtime_error("no condition " + key);
}

void expect_status(const VerificationReport& r, const std::string& keys, ConditionStatus want) {
    for (char k : keys) {
        const ConditionResult& c = cond(r, std::string(1, k));
        INFO("condition " << k << ": status " << to_string(c.status) << ", residual "
                          << c.residual);
        CHECK(c.status == want);
    }
}
}

TEST_CASE("the product torus satisfies every equivalent condition", "[verify]") {
    VerificationReport r = verify_surface(testsup::fixture("clifford"), {64, 64, 0.0}, tol);
    expect_status(r, "abcdefgh", ConditionStatus::pass);
    CHECK(cond(r, "codazzi").status == ConditionStatus::pass);
    CHECK(cond(r, "projection").status == ConditionStatus::pass);
    CHECK(r.lambda_median == Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK(r.lambda_spread < 1e-9);
    CHECK(r.min_k_gap == Approx(0.5).margin(1e-9));
    CHECK(r.consistent);
    CHECK(r.sphere_status == SphereFitStatus::pass);
    REQUIRE(r.sphere.has_value());
    CHECK(r.sphere->center.norm() < 1e-8);
    CHECK(r.sphere->radius == Approx(std::sqrt(2.0)).margin(1e-8));
    CHECK(r.overall_pass);
}

TEST_CASE("the squared graph fails every applicable condition, consistently", "[verify]") {
    VerificationReport r = verify_surface(testsup::fixture("square-graph"), grid, tol);
    expect_status(r, "abcdefg", ConditionStatus::fail);
    // both the axial quartic and the product of the degenerate quadratics
    // vanish identically here, so the factorization condition never engages
    expect_status(r, "h", ConditionStatus::vacuous);
    CHECK(cond(r, "codazzi").status == ConditionStatus::pass);
    CHECK(r.consistent);
    CHECK(r.sphere_status == SphereFitStatus::not_applicable);
    CHECK_FALSE(r.overall_pass);
}

TEST_CASE("the equator sphere trips the curvature hypothesis, not the conditions", "[verify]") {
    VerificationReport r = verify_surface(testsup::fixture("equator-sphere"), grid, tol);
    expect_status(r, "bcde", ConditionStatus::pass);
    expect_status(r, "afgh", ConditionStatus::vacuous);
    CHECK(r.lambda_median == Approx(1.0).margin(1e-9));
    CHECK(r.lambda_spread < 1e-9);
    CHECK(r.min_k_gap < 1e-9); // K equals the squared projection everywhere
    CHECK(r.consistent);
    CHECK(r.sphere_status == SphereFitStatus::hypothesis_violated);
    CHECK_FALSE(r.overall_pass);
}

TEST_CASE("the revolution torus passes vacuously with a zero factor", "[verify]") {
    VerificationReport r = verify_surface(testsup::fixture("revolution-torus"), grid, tol);
    expect_status(r, "bcd", ConditionStatus::pass);
    expect_status(r, "aefgh", ConditionStatus::vacuous);
    CHECK(cond(r, "codazzi").status == ConditionStatus::pass);
    CHECK(r.lambda_median == Approx(0.0).margin(1e-12));
    CHECK(r.consistent);
    CHECK(r.sphere_status == SphereFitStatus::not_applicable);
    CHECK(r.overall_pass);
}

TEST_CASE("the plane passes with everything degenerate", "[verify]") {
    VerificationReport r = verify_surface(testsup::fixture("plane"), grid, tol);
    expect_status(r, "bcd", ConditionStatus::pass);
    expect_status(r, "aefgh", ConditionStatus::vacuous);
    const ConditionResult& cz = cond(r, "codazzi");
    CHECK(cz.status == ConditionStatus::pass);
    CHECK(cz.residual == 0.0);
    CHECK(r.sphere_status == SphereFitStatus::not_applicable);
    CHECK(r.overall_pass);
}

TEST_CASE("the umbilical normal of the product torus is the inward radial", "[verify]") {
    SurfaceDef s = testsup::fixture("clifford");
    FrameData f = frame_at(s, 0.3, 0.8);
    UmbilicalNormal n = find_umbilical_normal(f, tol);
    Vec4 radial = -f.p / std::sqrt(2.0);
    CHECK((n.nu - radial).norm() < 1e-9);
    CHECK(n.lambda == Approx(1.0 / std::sqrt(2.0)).margin(1e-10));
    CHECK(n.residual < 1e-10);
}

TEST_CASE("positive-area ellipses admit no umbilical normal", "[verify]") {
    FrameData circle = frame_at(testsup::fixture("square-graph"), 0.2, -0.4);
    CHECK_THROWS_AS(find_umbilical_normal(circle, tol), EllipseNotSegment);
    FrameData generic = frame_at(testsup::generic_graph(), 0.3, 0.5);
    CHECK_THROWS_AS(find_umbilical_normal(generic, tol), EllipseNotSegment);
}

TEST_CASE("scaled product tori keep the factor-radius relation", "[verify]") {
    for (double c : {0.7, 1.3, 2.2}) {
        VerificationReport r = verify_surface(testsup::scaled_clifford(c), grid, tol);
        INFO("scale " << c);
        CHECK(r.overall_pass);
        CHECK(r.lambda_median == Approx(1.0 / (c * std::sqrt(2.0))).margin(1e-9));
        REQUIRE(r.sphere.has_value());
        CHECK(r.sphere->radius == Approx(c * std::sqrt(2.0)).margin(1e-8));
    }
}

TEST_CASE("reports do not depend on the worker count", "[verify]") {
    SurfaceDef s = testsup::fixture("clifford");
    auto run = [&](const char* threads) {
        setenv("R4CURV_THREADS", threads, 1);
        VerificationReport r = verify_surface(s, grid, tol);
        unsetenv("R4CURV_THREADS");
        return r;
    };
    VerificationReport a = run("1"), b = run("4");
    REQUIRE(a.conditions.size() == b.conditions.size());
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
        CHECK(a.conditions[i].status == b.conditions[i].status);
        // bitwise equality, not approximate: the reduction order is fixed
        CHECK(std::memcmp(&a.conditions[i].residual, &b.conditions[i].residual,
                          sizeof(double)) == 0);
    }
    CHECK(std::memcmp(&a.lambda_median, &b.lambda_median, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.lambda_spread, &b.lambda_spread, sizeof(double)) == 0);
    REQUIRE(a.sphere.has_value());
    REQUIRE(b.sphere.has_value());
    CHECK(a.sphere->radius == b.sphere->radius);
    CHECK((a.sphere->center - b.sphere->center).norm() == 0.0);
}
