#pragma once

#include <Eigen/SVD>

#include "r4curv/forms.hpp"
#include "r4curv/tolerances.hpp"

namespace r4curv {

// Chart components of the I-unit direction at I-angle theta, measured against
// the orthonormal tangent basis {t_u/|t_u|, (t_v - (F/E) t_u) normalized}.
inline Vec2 iso_direction(const FormBundle& b, double theta) {
    double m = std::sqrt(b.W() / b.E);
    Vec2 x1(1.0 / std::sqrt(b.E), 0.0);
    Vec2 x2(-b.F / (b.E * m), 1.0 / m);
    return std::cos(theta) * x1 + std::sin(theta) * x2;
}

// Normal-plane point traced by the curvature ellipse at I-angle theta.
inline Vec2 ellipse_point(const FormBundle& b, double theta) {
    Vec2 d = iso_direction(b, theta);
    double q1 = b.e1 * d[0] * d[0] + 2.0 * b.f1 * d[0] * d[1] + b.g1 * d[1] * d[1];
    double q2 = b.e2 * d[0] * d[0] + 2.0 * b.f2 * d[0] * d[1] + b.g2 * d[1] * d[1];
    return {q1, q2};
}

enum class EllipseKind { generic, segment, circle, point };

inline const char* to_string(EllipseKind k) {
    switch (k) {
    case EllipseKind::generic: return "generic";
    case EllipseKind::segment: return "segment";
    case EllipseKind::circle: return "circle";
    case EllipseKind::point: return "point";
    }
    return "?";
}

// eta(theta) = center + B cos 2theta + C sin 2theta; the singular values of
// [B C] are the semi-axes. center equals the mean curvature vector.
struct CurvatureEllipse {
    Vec2 center;
    Vec2 B, C;
    Vec2 axis_dir_a, axis_dir_b; // unit axis directions in the (n1, n2) plane
    double a = 0.0, b = 0.0;     // semi-axis lengths, a >= b
    EllipseKind kind = EllipseKind::generic;
    bool radial = false;         // segment whose supporting line meets the origin

    double area() const { return M_PI * a * b; }
};

inline CurvatureEllipse curvature_ellipse(const FormBundle& bundle, double kind_tol = 1e-7) {
    CurvatureEllipse e;
    Vec2 at0 = ellipse_point(bundle, 0.0);
    Vec2 at90 = ellipse_point(bundle, M_PI / 2.0);
    Vec2 at45 = ellipse_point(bundle, M_PI / 4.0);
    e.center = 0.5 * (at0 + at90);
    e.B = 0.5 * (at0 - at90);
    e.C = at45 - e.center;

    Eigen::Matrix2d M;
    M.col(0) = e.B;
    M.col(1) = e.C;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(M, Eigen::ComputeFullU);
    e.a = svd.singularValues()[0];
    e.b = svd.singularValues()[1];
    e.axis_dir_a = svd.matrixU().col(0);
    e.axis_dir_b = svd.matrixU().col(1);

    if (e.a < kind_tol * (e.center.norm() + 1.0))
        e.kind = EllipseKind::point;
    else if (e.b < kind_tol * e.a)
        e.kind = EllipseKind::segment;
    else if (e.a - e.b < kind_tol * e.a)
        e.kind = EllipseKind::circle;
    else
        e.kind = EllipseKind::generic;

    if (e.kind == EllipseKind::segment) {
        double off = std::abs(e.center[0] * e.axis_dir_a[1] - e.center[1] * e.axis_dir_a[0]);
        e.radial = off < kind_tol * (e.center.norm() + e.a);
    }
    return e;
}

// Point type flags. Residuals stay in the units of the invariants themselves;
// the defining formulas already normalize by EG - F^2.
struct PointClass {
    bool inflection = false;
    bool minimal = false;
    bool axiumbilic = false;
    bool semiumbilic = false;
    double res_inflection = 0.0;
    double res_minimal = 0.0;
    double res_axiumbilic = 0.0;
    double res_semiumbilic = 0.0;
};

inline PointClass classify_point(const Invariants& inv, const CurvatureEllipse& ell,
                                 const ToleranceSet& tol) {
    PointClass c;
    c.res_inflection = std::max(std::abs(inv.Delta), std::abs(inv.kN));
    c.res_minimal = inv.Hnorm;
    c.res_axiumbilic = ell.a - ell.b;
    c.res_semiumbilic = std::abs(inv.kN);
    c.inflection = c.res_inflection < tol.inflection;
    c.minimal = c.res_minimal < tol.minimal;
    c.axiumbilic = ell.kind == EllipseKind::circle || ell.kind == EllipseKind::point;
    c.semiumbilic = c.res_semiumbilic < tol.semiumbilic;
    return c;
}

} // namespace r4curv
