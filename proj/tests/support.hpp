#pragma once

// Shared plumbing for the test binaries: fixture loading, reference frames,
// random sampling. Fixture files live next to the sources; the directory can
// be overridden through R4CURV_SURFACE_DIR.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "r4curv/r4curv.hpp"

namespace testsup {

inline std::string surface_dir() {
    if (const char* env = std::getenv("R4CURV_SURFACE_DIR")) return env;
#ifdef R4CURV_SURFACE_FALLBACK
    return R4CURV_SURFACE_FALLBACK;
#else
    return "surfaces";
#endif
}

inline r4curv::SurfaceDef fixture(const std::string& stem) {
    return r4curv::load_surface_file(surface_dir() + "/" + stem + ".surf");
}

// Frame on the product torus whose normal basis is adapted to the two
// generating circles; every form coefficient is constant in it.
inline r4curv::FrameData adapted_clifford_frame(const r4curv::SurfaceDef& s, double u, double v) {
    r4curv::FrameData f = r4curv::frame_at(s, u, v);
    double r2 = std::sqrt(2.0);
    r4curv::Vec4 na(std::cos(u), std::sin(u), 0.0, 0.0);
    r4curv::Vec4 nb(0.0, 0.0, std::cos(v), std::sin(v));
    f.n1 = (na - nb) / r2;
    f.n2 = -(na + nb) / r2;
    return f;
}

// In-plane rotation of the normal basis. Reported invariants must not notice.
inline r4curv::FrameData rotate_normal_frame(const r4curv::FrameData& f, double phi) {
    r4curv::FrameData g = f;
    g.n1 = std::cos(phi) * f.n1 + std::sin(phi) * f.n2;
    g.n2 = -std::sin(phi) * f.n1 + std::cos(phi) * f.n2;
    return g;
}

inline r4curv::SurfaceDef scaled_clifford(double c) {
    std::string txt = "name = scaled-clifford\n"
                      "param c = " +
                      r4curv::fmt_double(c) +
                      "\n"
                      "x = c * cos(u)\n"
                      "y = c * sin(u)\n"
                      "z = c * cos(v)\n"
                      "w = c * sin(v)\n"
                      "u in [0, 2*pi] periodic\n"
                      "v in [0, 2*pi] periodic\n";
    return r4curv::parse_surface_text(txt);
}

inline r4curv::SurfaceDef scaled_revolution_torus(double ring, double tube) {
    std::string txt = "name = scaled-revolution-torus\n"
                      "param R = " +
                      r4curv::fmt_double(ring) + "\nparam r = " + r4curv::fmt_double(tube) +
                      "\n"
                      "x = (R + r * cos(v)) * cos(u)\n"
                      "y = (R + r * cos(v)) * sin(u)\n"
                      "z = r * sin(v)\n"
                      "w = 0\n"
                      "u in [0, 2*pi] periodic\n"
                      "v in [0, 2*pi] periodic\n";
    return r4curv::parse_surface_text(txt);
}

// Graph surface curving into both normal directions with nothing constant:
// generic ellipse, nondegenerate mean and asymptotic equations away from the
// axes, real asymptotic directions near the origin.
inline r4curv::SurfaceDef generic_graph() {
    std::string txt = "name = generic-graph\n"
                      "x = u\n"
                      "y = v\n"
                      "z = u^2 + 0.3 * u * v\n"
                      "w = 0.7 * v^2 + 0.1 * u^2\n"
                      "u in [-1, 1] open\n"
                      "v in [-1, 1] open\n";
    return r4curv::parse_surface_text(txt);
}

inline r4curv::GridPoint random_interior(const r4curv::SurfaceDef& s, std::mt19937& rng,
                                         double margin = 0.05) {
    std::uniform_real_distribution<double> f(margin, 1.0 - margin);
    return {s.u_range.lo + f(rng) * s.u_range.span(), s.v_range.lo + f(rng) * s.v_range.span()};
}

// Random form bundle with a safely positive first form; exercises code paths
// that fixtures, being special, cannot reach.
inline r4curv::FormBundle random_bundle(std::mt19937& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    r4curv::FormBundle b;
    double a0 = 0.5 + std::abs(c(rng)) * 2.0;
    double d0 = 0.5 + std::abs(c(rng)) * 2.0;
    b.F = c(rng) * 0.5 * std::sqrt(a0 * d0);
    b.E = a0;
    b.G = d0;
    b.e1 = c(rng) * 2.0;
    b.f1 = c(rng) * 2.0;
    b.g1 = c(rng) * 2.0;
    b.e2 = c(rng) * 2.0;
    b.f2 = c(rng) * 2.0;
    b.g2 = c(rng) * 2.0;
    return b;
}

} // namespace testsup
