#include "support.hpp"

using Catch::Approx;
using namespace r4curv;

TEST_CASE("surface files parse with domains, params and comments", "[surface]") {
    SurfaceDef s = parse_surface_text("# a cylinder slice\n"
                                      "name = tube\n"
                                      "param r = 1.5\n"
                                      "x = r * cos(u)\n"
                                      "y = r * sin(u)\n"
                                      "z = v\n"
                                      "w = 0\n"
                                      "\n"
                                      "u in [0, 2*pi] periodic\n"
                                      "v in [-1, 1] open\n");
    CHECK(s.name == "tube");
    CHECK(s.params.at("r") == 1.5);
    CHECK(s.u_range.periodic);
    CHECK_FALSE(s.v_range.periodic);
    CHECK(s.u_range.hi == Approx(2.0 * M_PI));
    auto p = eval_position(s, 0.0, 0.25);
    CHECK(p[0] == Approx(1.5));
    CHECK(p[2] == Approx(0.25));
}

TEST_CASE("malformed surface files are rejected with a line number", "[surface]") {
    auto line_of = [](const std::string& text) {
        try {
            parse_surface_text(text);
        } catch (const SurfaceFormatError& e) {
            return e.line();
        }
        return -1;
    };

    // missing w component: a whole-file complaint, reported as line 0
    CHECK(line_of("name = t\nx = u\ny = v\nz = 0\nu in [0,1] open\nv in [0,1] open\n") == 0);
    // broken interval syntax
    CHECK(line_of("name = t\nx = u\ny = v\nz = 0\nw = 0\nu in [0 1] open\nv in [0,1] open\n") ==
          6);
    // interval qualifier must be periodic or open
    CHECK(line_of("name = t\nx = u\ny = v\nz = 0\nw = 0\nu in [0,1] weird\nv in [0,1] open\n") ==
          6);
    // expression error surfaces as a format error on its line
    CHECK(line_of("name = t\nx = u +\ny = v\nz = 0\nw = 0\nu in [0,1] open\nv in [0,1] open\n") ==
          2);
    // declared periodic but the map does not close up
    CHECK(line_of("name = t\nx = u\ny = v\nz = 0\nw = 0\nu in [0,1] periodic\n"
                  "v in [0,1] open\n") == 0);
    // undeclared parameter
    CHECK(line_of("name = t\nx = r*u\ny = v\nz = 0\nw = 0\nu in [0,1] open\n"
                  "v in [0,1] open\n") == 0);
}

TEST_CASE("fixture corpus loads with the advertised domains", "[surface]") {
    SurfaceDef plane = testsup::fixture("plane");
    CHECK(plane.name == "plane");
    CHECK_FALSE(plane.u_range.periodic);
    CHECK(plane.u_range.lo == -1.0);

    SurfaceDef cliff = testsup::fixture("clifford");
    CHECK(cliff.u_range.periodic);
    CHECK(cliff.v_range.periodic);
    auto p = eval_position(cliff, 0.0, 0.0);
    CHECK(p[0] == Approx(1.0));
    CHECK(p[1] == Approx(0.0).margin(1e-15));
    CHECK(p[2] == Approx(1.0));
    CHECK(p[3] == Approx(0.0).margin(1e-15));

    SurfaceDef sq = testsup::fixture("square-graph");
    auto q = eval_position(sq, 0.5, 0.25);
    CHECK(q[2] == Approx(0.5 * 0.5 - 0.25 * 0.25));
    CHECK(q[3] == Approx(2.0 * 0.5 * 0.25));

    SurfaceDef sph = testsup::fixture("equator-sphere");
    CHECK(sph.u_range.periodic);
    CHECK_FALSE(sph.v_range.periodic);
    CHECK(sph.v_range.contains(M_PI / 4.0));
    auto r = eval_position(sph, 0.3, 0.8);
    CHECK(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] == Approx(1.0));
    CHECK(r[3] == 0.0);

    SurfaceDef torus = testsup::fixture("revolution-torus");
    auto t = eval_position(torus, 0.0, 0.0);
    CHECK(t[0] == Approx(3.0));
    CHECK(t[3] == 0.0);
}

TEST_CASE("periodic coordinates wrap transparently", "[surface]") {
    SurfaceDef cliff = testsup::fixture("clifford");
    auto a = eval_position(cliff, 0.3, 0.8);
    auto b = eval_position(cliff, 0.3 + 2.0 * M_PI, 0.8 - 2.0 * M_PI);
    for (int k = 0; k < 4; ++k) CHECK(a[k] == Approx(b[k]).margin(1e-12));

    Jet4 ja = eval_immersion_jet(cliff, 0.3, 0.8);
    Jet4 jb = eval_immersion_jet(cliff, 0.3 + 2.0 * M_PI, 0.8);
    for (int k = 0; k < 4; ++k) {
        CHECK(ja[k].v == Approx(jb[k].v).margin(1e-12));
        CHECK(ja[k].du == Approx(jb[k].du).margin(1e-12));
    }
}

TEST_CASE("immersion jets agree with closed-form derivatives", "[surface]") {
    SurfaceDef cliff = testsup::fixture("clifford");
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pt(0.0, 2.0 * M_PI);
    for (int k = 0; k < 25; ++k) {
        double u = pt(rng), v = pt(rng);
        Jet4 j = eval_immersion_jet(cliff, u, v);
        CHECK(j[0].du == Approx(-std::sin(u)).margin(1e-14));
        CHECK(j[0].duu == Approx(-std::cos(u)).margin(1e-14));
        CHECK(j[0].duv == Approx(0.0).margin(1e-14));
        CHECK(j[2].dv == Approx(-std::sin(v)).margin(1e-14));
        CHECK(j[3].dvv == Approx(-std::sin(v)).margin(1e-14));
    }
}

TEST_CASE("immersion jets agree with finite differences on the whole corpus", "[surface]") {
    std::mt19937 rng(20240812);
    const double h = 1e-4;
    for (const char* stem : {"plane", "clifford", "square-graph", "equator-sphere",
                             "revolution-torus"}) {
        SurfaceDef s = testsup::fixture(stem);
        auto raw = [&](double u, double v, int k) {
            return eval_expression<double>(*s.component[k], u, v, s.params);
        };
        for (int n = 0; n < 100; ++n) {
            auto [u, v] = testsup::random_interior(s, rng, 0.02);
            Jet4 j = eval_immersion_jet(s, u, v);
            for (int k = 0; k < 4; ++k) {
                double du = (raw(u + h, v, k) - raw(u - h, v, k)) / (2 * h);
                double dv = (raw(u, v + h, k) - raw(u, v - h, k)) / (2 * h);
                double duu = (raw(u + h, v, k) - 2 * raw(u, v, k) + raw(u - h, v, k)) / (h * h);
                double dvv = (raw(u, v + h, k) - 2 * raw(u, v, k) + raw(u, v - h, k)) / (h * h);
                double duv = (raw(u + h, v + h, k) - raw(u + h, v - h, k) -
                              raw(u - h, v + h, k) + raw(u - h, v - h, k)) /
                             (4 * h * h);
                REQUIRE(std::abs(j[k].du - du) < 1e-5);
                REQUIRE(std::abs(j[k].dv - dv) < 1e-5);
                REQUIRE(std::abs(j[k].duu - duu) < 1e-3);
                REQUIRE(std::abs(j[k].duv - duv) < 1e-3);
                REQUIRE(std::abs(j[k].dvv - dvv) < 1e-3);
            }
        }
    }
}
