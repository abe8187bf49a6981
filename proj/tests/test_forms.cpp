#include "support.hpp"

using Catch::Approx;
using namespace r4curv;

TEST_CASE("plane frame picks the coordinate normals", "[forms]") {
    SurfaceDef s = testsup::fixture("plane");
    FrameData f = frame_at(s, 0.2, -0.4);
    CHECK(f.n1.isApprox(Vec4(0, 0, 1, 0), 1e-12));
    CHECK(f.n2.isApprox(Vec4(0, 0, 0, 1), 1e-12));
    FormBundle b = fundamental_forms(f);
    CHECK(b.E == Approx(1.0));
    CHECK(b.F == Approx(0.0).margin(1e-15));
    CHECK(b.G == Approx(1.0));
    for (double c : {b.e1, b.f1, b.g1, b.e2, b.f2, b.g2}) CHECK(c == 0.0);
    Invariants inv = invariants(b);
    CHECK(inv.Hnorm == 0.0);
    CHECK(inv.kN == 0.0);
    CHECK(inv.K == 0.0);
    CHECK(inv.Delta == 0.0);
}

TEST_CASE("squared-graph invariants at the origin", "[forms]") {
    SurfaceDef s = testsup::fixture("square-graph");
    FrameData f = frame_at(s, 0.0, 0.0);
    REQUIRE(f.n1.isApprox(Vec4(0, 0, 1, 0), 1e-12));
    REQUIRE(f.n2.isApprox(Vec4(0, 0, 0, 1), 1e-12));

    FormBundle b = fundamental_forms(f);
    CHECK(b.E == Approx(1.0).margin(1e-14));
    CHECK(b.F == Approx(0.0).margin(1e-14));
    CHECK(b.G == Approx(1.0).margin(1e-14));
    CHECK(b.e1 == Approx(2.0).margin(1e-13));
    CHECK(b.f1 == Approx(0.0).margin(1e-13));
    CHECK(b.g1 == Approx(-2.0).margin(1e-13));
    CHECK(b.e2 == Approx(0.0).margin(1e-13));
    CHECK(b.f2 == Approx(2.0).margin(1e-13));
    CHECK(b.g2 == Approx(0.0).margin(1e-13));

    Invariants inv = invariants(b);
    CHECK(inv.Hnorm == Approx(0.0).margin(1e-10));
    CHECK(inv.kN == Approx(4.0).margin(1e-10));
    CHECK(inv.K == Approx(-8.0).margin(1e-10));
    CHECK(inv.Delta == Approx(16.0).margin(1e-9));
}

TEST_CASE("product torus in the adapted frame has constant forms", "[forms]") {
    SurfaceDef s = testsup::fixture("clifford");
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pt(0.0, 2.0 * M_PI);
    double r2 = std::sqrt(0.5);
    for (int k = 0; k < 12; ++k) {
        double u = pt(rng), v = pt(rng);
        FrameData f = testsup::adapted_clifford_frame(s, u, v);
        FormBundle b = fundamental_forms(f);
        CHECK(b.E == Approx(1.0).margin(1e-13));
        CHECK(b.F == Approx(0.0).margin(1e-13));
        CHECK(b.G == Approx(1.0).margin(1e-13));
        CHECK(b.e1 == Approx(-r2).margin(1e-13));
        CHECK(b.f1 == Approx(0.0).margin(1e-13));
        CHECK(b.g1 == Approx(r2).margin(1e-13));
        CHECK(b.e2 == Approx(r2).margin(1e-13));
        CHECK(b.f2 == Approx(0.0).margin(1e-13));
        CHECK(b.g2 == Approx(r2).margin(1e-13));

        Invariants inv = invariants(b);
        CHECK(inv.H[0] == Approx(0.0).margin(1e-13));
        CHECK(inv.H[1] == Approx(r2).margin(1e-13));
        CHECK(inv.kN == Approx(0.0).margin(1e-13));
        CHECK(inv.K == Approx(0.0).margin(1e-13));
        CHECK(inv.Delta == Approx(-0.25).margin(1e-13));
    }
}

TEST_CASE("invariants ignore rotations of the normal frame", "[forms]") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (const char* stem : {"clifford", "square-graph", "revolution-torus"}) {
        SurfaceDef s = testsup::fixture(stem);
        for (int k = 0; k < 4; ++k) {
            auto [u, v] = testsup::random_interior(s, rng);
            FrameData f = frame_at(s, u, v);
            FormBundle b0 = fundamental_forms(f);
            Invariants i0 = invariants(b0);
            CurvatureEllipse e0 = curvature_ellipse(b0);
            for (int r = 0; r < 10; ++r) {
                FrameData g = testsup::rotate_normal_frame(f, angle(rng));
                FormBundle b1 = fundamental_forms(g);
                Invariants i1 = invariants(b1);
                CurvatureEllipse e1 = curvature_ellipse(b1);
                double scale = std::max(1.0, std::abs(i0.K));
                CHECK(std::abs(i1.K - i0.K) < 1e-9 * scale);
                CHECK(std::abs(std::abs(i1.kN) - std::abs(i0.kN)) <
                      1e-9 * std::max(1.0, std::abs(i0.kN)));
                CHECK(std::abs(i1.Delta - i0.Delta) < 1e-9 * std::max(1.0, std::abs(i0.Delta)));
                CHECK(std::abs(i1.Hnorm - i0.Hnorm) < 1e-9 * std::max(1.0, i0.Hnorm));
                CHECK(std::abs(e1.a - e0.a) < 1e-9 * std::max(1.0, e0.a));
                CHECK(std::abs(e1.b - e0.b) < 1e-9 * std::max(1.0, e0.b));
                CHECK(e1.kind == e0.kind);
            }
        }
    }
}

TEST_CASE("equator sphere sees the identity second form along its inward normal", "[forms]") {
    SurfaceDef s = testsup::fixture("equator-sphere");
    for (auto [u, v] : {std::pair{0.3, 0.7}, std::pair{2.0, -0.9}, std::pair{5.5, 0.1}}) {
        FrameData f = frame_at(s, u, v);
        FormBundle b = fundamental_forms(f);
        CHECK(b.E == Approx(std::cos(v) * std::cos(v)).margin(1e-13));
        CHECK(b.F == Approx(0.0).margin(1e-13));
        CHECK(b.G == Approx(1.0).margin(1e-13));

        Vec4 inward = -Vec4(std::cos(u) * std::cos(v), std::sin(u) * std::cos(v), std::sin(v),
                            0.0);
        NuForm nf = nu_second_form(f, inward);
        CHECK(nf.e == Approx(b.E).margin(1e-12));
        CHECK(nf.f == Approx(b.F).margin(1e-12));
        CHECK(nf.g == Approx(b.G).margin(1e-12));
        PrincipalPair pp = nu_principal_curvatures(b, nf);
        CHECK(pp.k1 == Approx(1.0).margin(1e-10));
        CHECK(pp.k2 == Approx(1.0).margin(1e-10));

        Invariants inv = invariants(b);
        CHECK(inv.K == Approx(1.0).margin(1e-12));
        CHECK(inv.kN == Approx(0.0).margin(1e-13));
        CHECK(inv.Delta == Approx(0.0).margin(1e-13));
    }
}

TEST_CASE("revolution torus carries all curvature in one normal", "[forms]") {
    SurfaceDef s = testsup::fixture("revolution-torus");
    FrameData f = frame_at(s, 0.0, 0.0);
    FormBundle b = fundamental_forms(f);
    CHECK(b.E == Approx(9.0));
    CHECK(b.F == Approx(0.0).margin(1e-14));
    CHECK(b.G == Approx(1.0));
    // normal frame at the outer equator: the radial direction and the w axis
    REQUIRE(std::abs(f.n1[0]) == Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(f.n2[3]) == Approx(1.0).margin(1e-12));
    double s1 = f.n1[0]; // branch sign of the radial normal
    CHECK(b.e1 == Approx(-3.0 * s1).margin(1e-12));
    CHECK(b.f1 == Approx(0.0).margin(1e-13));
    CHECK(b.g1 == Approx(-1.0 * s1).margin(1e-13));
    CHECK(b.e2 == Approx(0.0).margin(1e-13));
    CHECK(b.f2 == Approx(0.0).margin(1e-13));
    CHECK(b.g2 == Approx(0.0).margin(1e-13));

    CHECK(invariants(b).K == Approx(1.0 / 3.0).margin(1e-12));
    // inner equator: negatively curved
    FormBundle bi = fundamental_forms(frame_at(s, 0.0, M_PI));
    CHECK(invariants(bi).K == Approx(-1.0).margin(1e-12));
    CHECK(invariants(bi).kN == Approx(0.0).margin(1e-14));
}

TEST_CASE("normal certificates are enforced", "[forms]") {
    SurfaceDef s = testsup::fixture("clifford");
    FrameData f = frame_at(s, 0.4, 1.1);
    CHECK_THROWS_AS(nu_second_form(f, 2.0 * f.n1), NotNormal);     // not unit
    CHECK_THROWS_AS(nu_second_form(f, f.t_u / f.t_u.norm()), NotNormal); // tangent
    CHECK_NOTHROW(nu_second_form(f, f.n2));
}

TEST_CASE("degenerate parametrizations are refused", "[forms]") {
    SurfaceDef s = parse_surface_text("name = collapsed\n"
                                      "x = u\ny = u\nz = 0\nw = 0\n"
                                      "u in [0,1] open\nv in [0,1] open\n");
    CHECK_THROWS_AS(frame_at(s, 0.5, 0.5), DegenerateImmersion);
}
