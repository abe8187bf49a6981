#pragma once

#include <cmath>

#include "r4curv/frame.hpp"

namespace r4curv {

// First form I = E du^2 + 2F du dv + G dv^2 and the two second forms
// II_i = e_i du^2 + 2 f_i du dv + g_i dv^2 taken against n1, n2.
struct FormBundle {
    double E, F, G;
    double e1, f1, g1;
    double e2, f2, g2;

    double W() const { return E * G - F * F; }
    // Magnitude guides for scale-relative degeneracy thresholds.
    double second_scale() const {
        double m = 0.0;
        for (double x : {e1, f1, g1, e2, f2, g2}) m = std::max(m, std::abs(x));
        return m;
    }
    double first_scale() const { return std::max({E, std::abs(F), G}); }
};

inline FormBundle fundamental_forms(const FrameData& f) {
    FormBundle b;
    b.E = f.t_u.dot(f.t_u);
    b.F = f.t_u.dot(f.t_v);
    b.G = f.t_v.dot(f.t_v);
    b.e1 = f.s_uu.dot(f.n1);
    b.f1 = f.s_uv.dot(f.n1);
    b.g1 = f.s_vv.dot(f.n1);
    b.e2 = f.s_uu.dot(f.n2);
    b.f2 = f.s_uv.dot(f.n2);
    b.g2 = f.s_vv.dot(f.n2);
    return b;
}

// Pointwise invariants of the immersion. H is expressed in the (n1, n2) basis;
// kN and Delta are the normal curvature and the resultant of the two second
// forms, K the Gaussian curvature.
struct Invariants {
    Vec2 H;
    double Hnorm;
    double kN;
    double K;
    double Delta;
};

inline Invariants invariants(const FormBundle& b) {
    Invariants out;
    double W = b.W();
    out.H[0] = (b.E * b.g1 - 2.0 * b.F * b.f1 + b.G * b.e1) / (2.0 * W);
    out.H[1] = (b.E * b.g2 - 2.0 * b.F * b.f2 + b.G * b.e2) / (2.0 * W);
    out.Hnorm = out.H.norm();
    out.kN = (b.E * (b.f1 * b.g2 - b.f2 * b.g1) - b.F * (b.e1 * b.g2 - b.e2 * b.g1) +
              b.G * (b.e1 * b.f2 - b.e2 * b.f1)) /
             (2.0 * W);
    out.K = (b.e1 * b.g1 - b.f1 * b.f1 + b.e2 * b.g2 - b.f2 * b.f2) / W;
    Eigen::Matrix4d D;
    D << b.e1, 2.0 * b.f1, b.g1, 0.0,
         b.e2, 2.0 * b.f2, b.g2, 0.0,
         0.0, b.e1, 2.0 * b.f1, b.g1,
         0.0, b.e2, 2.0 * b.f2, b.g2;
    out.Delta = D.determinant() / (4.0 * W);
    return out;
}

// Second form against an arbitrary unit normal nu.
struct NuForm {
    double e, f, g;
};

inline NuForm nu_second_form(const FrameData& fr, const Vec4& nu) {
    double scale = std::sqrt(std::max({fr.t_u.squaredNorm(), fr.t_v.squaredNorm(), 1.0}));
    if (std::abs(nu.norm() - 1.0) > 1e-8) throw NotNormal("nu is not a unit vector");
    if (std::abs(nu.dot(fr.t_u)) > 1e-8 * scale || std::abs(nu.dot(fr.t_v)) > 1e-8 * scale)
        throw NotNormal("nu is not orthogonal to the tangent plane");
    return {fr.s_uu.dot(nu), fr.s_uv.dot(nu), fr.s_vv.dot(nu)};
}

// Principal curvatures along nu: roots of
// (EG - F^2) k^2 - (E g - 2F f + G e) k + (e g - f^2) = 0, ordered k1 <= k2.
struct PrincipalPair {
    double k1, k2;
};

inline PrincipalPair nu_principal_curvatures(const FormBundle& b, const NuForm& nf) {
    double a = b.W();
    double mb = b.E * nf.g - 2.0 * b.F * nf.f + b.G * nf.e;
    double c = nf.e * nf.g - nf.f * nf.f;
    double disc = mb * mb - 4.0 * a * c;
    // Exactly umbilic data can land a hair negative; clamp roundoff only.
    if (disc < 0.0 && disc > -1e-12 * std::max({1.0, mb * mb, std::abs(4.0 * a * c)})) disc = 0.0;
    if (disc < 0.0) throw EvalDomainError("complex principal curvatures");
    double root = std::sqrt(disc);
    double k1 = (mb - root) / (2.0 * a);
    double k2 = (mb + root) / (2.0 * a);
    if (k1 > k2) std::swap(k1, k2);
    return {k1, k2};
}

} // namespace r4curv
