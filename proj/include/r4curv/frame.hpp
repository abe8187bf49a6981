#pragma once

#include <Eigen/Dense>

#include "r4curv/errors.hpp"
#include "r4curv/surface.hpp"
#include "r4curv/tolerances.hpp"

namespace r4curv {

using Vec4 = Eigen::Vector4d;
using Vec2 = Eigen::Vector2d;

// Pointwise immersion data: position, first and second derivatives, and an
// orthonormal basis {n1, n2} of the normal plane with det[t_u t_v n1 n2] > 0.
struct FrameData {
    Vec4 p;
    Vec4 t_u, t_v;
    Vec4 s_uu, s_uv, s_vv;
    Vec4 n1, n2;
};

namespace detail {

inline Vec4 from_jet_values(const Jet4& j) { return {j[0].v, j[1].v, j[2].v, j[3].v}; }
inline Vec4 from_jet_du(const Jet4& j) { return {j[0].du, j[1].du, j[2].du, j[3].du}; }
inline Vec4 from_jet_dv(const Jet4& j) { return {j[0].dv, j[1].dv, j[2].dv, j[3].dv}; }
inline Vec4 from_jet_duu(const Jet4& j) { return {j[0].duu, j[1].duu, j[2].duu, j[3].duu}; }
inline Vec4 from_jet_duv(const Jet4& j) { return {j[0].duv, j[1].duv, j[2].duv, j[3].duv}; }
inline Vec4 from_jet_dvv(const Jet4& j) { return {j[0].dvv, j[1].dvv, j[2].dvv, j[3].dvv}; }

} // namespace detail

// Deterministic frame: project the standard basis onto the normal plane, keep
// the two largest projections (ties broken by index), Gram-Schmidt, then flip
// n2 if needed for positive orientation.
inline FrameData normal_frame(const Jet4& jets, double regularity_tol = 1e-10) {
    FrameData f;
    f.p = detail::from_jet_values(jets);
    f.t_u = detail::from_jet_du(jets);
    f.t_v = detail::from_jet_dv(jets);
    f.s_uu = detail::from_jet_duu(jets);
    f.s_uv = detail::from_jet_duv(jets);
    f.s_vv = detail::from_jet_dvv(jets);

    double E = f.t_u.dot(f.t_u);
    double F = f.t_u.dot(f.t_v);
    double G = f.t_v.dot(f.t_v);
    double W = E * G - F * F;
    if (!(W > regularity_tol * std::max(E * G, 1e-300)))
        throw DegenerateImmersion("first fundamental form is singular");

    auto tangent_reject = [&](const Vec4& x) {
        double b1 = x.dot(f.t_u), b2 = x.dot(f.t_v);
        double c1 = (G * b1 - F * b2) / W;
        double c2 = (-F * b1 + E * b2) / W;
        return Vec4(x - c1 * f.t_u - c2 * f.t_v);
    };

    Vec4 proj[4];
    double norms[4];
    for (int k = 0; k < 4; ++k) {
        proj[k] = tangent_reject(Vec4::Unit(k));
        norms[k] = proj[k].norm();
    }
    // Strict > keeps the smaller index on ties, so the choice is deterministic.
    int best = 0, second = -1;
    for (int k = 1; k < 4; ++k)
        if (norms[k] > norms[best]) best = k;
    for (int k = 0; k < 4; ++k) {
        if (k == best) continue;
        if (second < 0 || norms[k] > norms[second]) second = k;
    }

    f.n1 = proj[best] / norms[best];
    Vec4 q = proj[second] - proj[second].dot(f.n1) * f.n1;
    double qn = q.norm();
    if (!(qn > 0.0)) throw DegenerateImmersion("normal plane collapsed");
    f.n2 = q / qn;

    Eigen::Matrix4d M;
    M.col(0) = f.t_u;
    M.col(1) = f.t_v;
    M.col(2) = f.n1;
    M.col(3) = f.n2;
    if (M.determinant() < 0.0) f.n2 = -f.n2;
    return f;
}

inline FrameData frame_at(const SurfaceDef& s, double u, double v, double regularity_tol = 1e-10) {
    return normal_frame(eval_immersion_jet(s, u, v), regularity_tol);
}

} // namespace r4curv
