#pragma once

#include <array>

#include "r4curv/forms.hpp"
#include "r4curv/surface.hpp"

namespace r4curv {

struct Christoffel {
    double G111, G211, G112, G212, G122, G222;
};

// Christoffel symbols of the first form in a general chart. The metric
// derivatives come from the second jet exactly: E_u = 2<s_uu, t_u> and so on,
// so no finite differencing enters here.
inline Christoffel christoffel(const FrameData& fr, const FormBundle& b) {
    double Eu = 2.0 * fr.s_uu.dot(fr.t_u);
    double Ev = 2.0 * fr.s_uv.dot(fr.t_u);
    double Fu = fr.s_uu.dot(fr.t_v) + fr.t_u.dot(fr.s_uv);
    double Fv = fr.s_uv.dot(fr.t_v) + fr.t_u.dot(fr.s_vv);
    double Gu = 2.0 * fr.s_uv.dot(fr.t_v);
    double Gv = 2.0 * fr.s_vv.dot(fr.t_v);
    double W2 = 2.0 * b.W();
    Christoffel c;
    c.G111 = (b.G * Eu - 2.0 * b.F * Fu + b.F * Ev) / W2;
    c.G211 = (2.0 * b.E * Fu - b.E * Ev - b.F * Eu) / W2;
    c.G112 = (b.G * Ev - b.F * Gu) / W2;
    c.G212 = (b.E * Gu - b.F * Ev) / W2;
    c.G122 = (2.0 * b.G * Fv - b.G * Gu - b.F * Gv) / W2;
    c.G222 = (b.E * Gv - 2.0 * b.F * Fv + b.F * Gu) / W2;
    return c;
}

// Coefficients of the derived-frame equations. Tangential parts are closed
// formulas in the fundamental forms; the normal-connection pair a311/a312 is
// frame-dependent and must be measured from the frame field, so callers that
// need it go through structure_report.
//   dn1/du = a111 t_u + a211 t_v + a311 n2    dn1/dv = a112 t_u + a212 t_v + a312 n2
//   dn2/du = a121 t_u + a221 t_v - a311 n1    dn2/dv = a122 t_u + a222 t_v - a312 n1
struct StructureCoefficients {
    Christoffel gamma{};
    double a111 = 0.0, a211 = 0.0, a112 = 0.0, a212 = 0.0;
    double a121 = 0.0, a221 = 0.0, a122 = 0.0, a222 = 0.0;
    double a311 = 0.0, a312 = 0.0;
};

inline StructureCoefficients structure_coefficients(const FrameData& fr, const FormBundle& b) {
    StructureCoefficients c;
    c.gamma = christoffel(fr, b);
    double W = b.W();
    c.a111 = (b.f1 * b.F - b.e1 * b.G) / W;
    c.a211 = (b.e1 * b.F - b.f1 * b.E) / W;
    c.a112 = (b.g1 * b.F - b.f1 * b.G) / W;
    c.a212 = (b.f1 * b.F - b.g1 * b.E) / W;
    c.a121 = (b.f2 * b.F - b.e2 * b.G) / W;
    c.a221 = (b.e2 * b.F - b.f2 * b.E) / W;
    c.a122 = (b.g2 * b.F - b.f2 * b.G) / W;
    c.a222 = (b.f2 * b.F - b.g2 * b.E) / W;
    return c;
}

struct StructureReport {
    StructureCoefficients coeff{};
    std::array<double, 4> codazzi{};   // residuals of the four Codazzi equations
    std::array<double, 4> structure{}; // residuals of dn1, dn2 against the frame
};

namespace detail {

// Frames at nearby points must be the smooth continuation of the center
// frame; a branch flip of the normal-plane basis would poison every finite
// difference below.
inline void check_frame_continuity(const FrameData& center, const FrameData& nb) {
    if (center.n1.dot(nb.n1) < std::cos(0.1) || center.n2.dot(nb.n2) < std::cos(0.1))
        throw FrameDiscontinuity("normal frame jumps between finite-difference samples");
}

} // namespace detail

// Evaluates the compatibility system at (u,v): Codazzi residuals c1..c4 and
// the residuals of the derived-frame equations s1..s4. Derivatives of the
// frame and of the second-form components use central differences of step h;
// everything else is exact, so the residuals decay as O(h^2).
inline StructureReport structure_report(const SurfaceDef& s, double u, double v, double h,
                                        const ToleranceSet& tol) {
    FrameData fc = frame_at(s, u, v, tol.regularity);
    FormBundle b = fundamental_forms(fc);

    FrameData fe = frame_at(s, u + h, v, tol.regularity);
    FrameData fw = frame_at(s, u - h, v, tol.regularity);
    FrameData fn = frame_at(s, u, v + h, tol.regularity);
    FrameData fs = frame_at(s, u, v - h, tol.regularity);
    for (const FrameData* nb : {&fe, &fw, &fn, &fs}) detail::check_frame_continuity(fc, *nb);

    FormBundle be = fundamental_forms(fe), bw = fundamental_forms(fw);
    FormBundle bn = fundamental_forms(fn), bs = fundamental_forms(fs);

    StructureReport r;
    r.coeff = structure_coefficients(fc, b);
    StructureCoefficients& a = r.coeff;

    Vec4 n1u = (fe.n1 - fw.n1) / (2.0 * h);
    Vec4 n1v = (fn.n1 - fs.n1) / (2.0 * h);
    Vec4 n2u = (fe.n2 - fw.n2) / (2.0 * h);
    Vec4 n2v = (fn.n2 - fs.n2) / (2.0 * h);
    a.a311 = n1u.dot(fc.n2);
    a.a312 = n1v.dot(fc.n2);

    r.structure[0] = (n1u - (a.a111 * fc.t_u + a.a211 * fc.t_v + a.a311 * fc.n2)).norm();
    r.structure[1] = (n1v - (a.a112 * fc.t_u + a.a212 * fc.t_v + a.a312 * fc.n2)).norm();
    r.structure[2] = (n2u - (a.a121 * fc.t_u + a.a221 * fc.t_v - a.a311 * fc.n1)).norm();
    r.structure[3] = (n2v - (a.a122 * fc.t_u + a.a222 * fc.t_v - a.a312 * fc.n1)).norm();

    auto dv_ = [&](double n, double sv) { return (n - sv) / (2.0 * h); };
    double e1v = dv_(bn.e1, bs.e1), f1u = dv_(be.f1, bw.f1);
    double e2v = dv_(bn.e2, bs.e2), f2u = dv_(be.f2, bw.f2);
    double f1v = dv_(bn.f1, bs.f1), g1u = dv_(be.g1, bw.g1);
    double f2v = dv_(bn.f2, bs.f2), g2u = dv_(be.g2, bw.g2);

    const Christoffel& G = a.gamma;
    r.codazzi[0] = (e1v - f1u) - (G.G112 * b.e1 + (G.G212 - G.G111) * b.f1 - G.G211 * b.g1 +
                                  a.a312 * b.e2 - a.a311 * b.f2);
    r.codazzi[1] = (e2v - f2u) - (G.G112 * b.e2 + (G.G212 - G.G111) * b.f2 - G.G211 * b.g2 -
                                  a.a312 * b.e1 + a.a311 * b.f1);
    r.codazzi[2] = (f1v - g1u) - (G.G122 * b.e1 + (G.G222 - G.G112) * b.f1 - G.G212 * b.g1 +
                                  a.a312 * b.f2 - a.a311 * b.g2);
    r.codazzi[3] = (f2v - g2u) - (G.G122 * b.e2 + (G.G222 - G.G112) * b.f2 - G.G212 * b.g2 -
                                  a.a312 * b.f1 + a.a311 * b.g1);
    return r;
}

} // namespace r4curv
