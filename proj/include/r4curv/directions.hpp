#pragma once

#include <vector>

#include "r4curv/forms.hpp"
#include "r4curv/tolerances.hpp"

namespace r4curv {

// Projective tangent direction [du : dv], stored normalized with a canonical
// sign (du > 0, or du == 0 and dv > 0) so equal lines compare equal.
struct TangentDirection {
    double du = 1.0, dv = 0.0;

    static TangentDirection of(double du, double dv) {
        double n = std::hypot(du, dv);
        TangentDirection d;
        if (n == 0.0) return d;
        d.du = du / n;
        d.dv = dv / n;
        if (d.du < 0.0 || (d.du == 0.0 && d.dv < 0.0)) {
            d.du = -d.du;
            d.dv = -d.dv;
        }
        return d;
    }
    // Representative in (-pi/2, pi/2], one value per line.
    double chart_angle() const { return std::atan2(dv, du); }
};

inline double i_inner(const FormBundle& b, const TangentDirection& x, const TangentDirection& y) {
    return b.E * x.du * y.du + b.F * (x.du * y.dv + x.dv * y.du) + b.G * x.dv * y.dv;
}

inline double i_norm(const FormBundle& b, const TangentDirection& x) {
    return std::sqrt(std::max(0.0, i_inner(b, x, x)));
}

// Metric angle between two lines, in [0, pi/2].
inline double i_angle(const FormBundle& b, const TangentDirection& x, const TangentDirection& y) {
    double c = std::abs(i_inner(b, x, y)) / (i_norm(b, x) * i_norm(b, y));
    return std::acos(std::min(1.0, c));
}

struct DirectionSet {
    std::vector<TangentDirection> d;
    std::vector<int> mult;
    bool degenerate = false; // every coefficient below threshold: all directions solve

    int count() const { return static_cast<int>(d.size()); }
};

// Real projective roots of a du^2 + b du dv + c dv^2 = 0. scale carries the
// natural magnitude of the coefficients so degeneracy is judged relatively.
inline DirectionSet solve_binary_quadratic(double a, double b, double c, double scale,
                                           double degen_tol) {
    DirectionSet out;
    double m = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (m < degen_tol * std::max(scale, 1e-300)) {
        out.degenerate = true;
        return out;
    }
    if (std::abs(a) <= 1e-14 * m) {
        // dv (b du + c dv) = 0: one root at dv = 0, the other explicit.
        if (std::abs(b) <= 1e-14 * m) {
            out.d.push_back(TangentDirection::of(1.0, 0.0));
            out.mult.push_back(2);
            return out;
        }
        out.d.push_back(TangentDirection::of(1.0, 0.0));
        out.mult.push_back(1);
        out.d.push_back(TangentDirection::of(-c, b));
        out.mult.push_back(1);
        return out;
    }
    double disc = b * b - 4.0 * a * c;
    double disc_scale = std::max(b * b, std::abs(4.0 * a * c));
    if (std::abs(disc) <= 1e-14 * disc_scale) {
        out.d.push_back(TangentDirection::of(-b / (2.0 * a), 1.0));
        out.mult.push_back(2);
        return out;
    }
    if (disc < 0.0) return out; // no real directions
    double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
    out.d.push_back(TangentDirection::of(q / a, 1.0));
    out.mult.push_back(1);
    out.d.push_back(TangentDirection::of(c / q, 1.0));
    out.mult.push_back(1);
    return out;
}

// Directions whose second-form image lies on the line through the origin of
// the normal plane: T1 du^2 + T2 du dv + T3 dv^2 = 0.
inline DirectionSet asymptotic_directions(const FormBundle& b, const ToleranceSet& tol) {
    double T1 = b.e1 * b.f2 - b.e2 * b.f1;
    double T2 = b.e1 * b.g2 - b.e2 * b.g1;
    double T3 = b.f1 * b.g2 - b.f2 * b.g1;
    double s = b.second_scale();
    return solve_binary_quadratic(T1, T2, T3, s * s, tol.degenerate_eq);
}

// Directions whose second-form image lies on the line spanned by H.
inline DirectionSet mean_directions(const FormBundle& b, const ToleranceSet& tol) {
    double B1 = (b.e1 * b.g2 - b.e2 * b.g1) * b.E + 2.0 * (b.e2 * b.f1 - b.e1 * b.f2) * b.F;
    double B2 = (b.f1 * b.g2 - b.f2 * b.g1) * b.E + (b.e2 * b.f1 - b.e1 * b.f2) * b.G;
    double B3 = 2.0 * (b.f1 * b.g2 - b.f2 * b.g1) * b.F + (b.e2 * b.g1 - b.e1 * b.g2) * b.G;
    double s = b.second_scale();
    double scale = s * s * b.first_scale();
    return solve_binary_quadratic(B1, 2.0 * B2, B3, scale, tol.degenerate_eq);
}

// Curvature lines of the shape operator along a unit normal nu:
// (E f - F e) du^2 + (E g - e G) du dv + (F g - f G) dv^2 = 0.
inline DirectionSet nu_principal_directions(const FormBundle& b, const NuForm& nf,
                                            const ToleranceSet& tol) {
    double a = b.E * nf.f - b.F * nf.e;
    double mid = b.E * nf.g - nf.e * b.G;
    double c = b.F * nf.g - nf.f * b.G;
    double scale = std::max(b.second_scale(), std::abs(nf.e) + std::abs(nf.f) + std::abs(nf.g)) *
                   b.first_scale();
    return solve_binary_quadratic(a, mid, c, scale, tol.degenerate_eq);
}

} // namespace r4curv
