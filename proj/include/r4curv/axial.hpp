#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>

#include "r4curv/directions.hpp"
#include "r4curv/ellipse.hpp"

namespace r4curv {

// Coefficients of the axial quartic A0 du^4 + A1 du^3 dv + ... + A4 dv^4 = 0,
// whose roots pull back the four vertices of the curvature ellipse.
struct AxialQuartic {
    std::array<double, 5> A{};
    double scale = 0.0; // natural coefficient magnitude for degeneracy tests
};

inline AxialQuartic axial_quartic_coefficients(const FormBundle& b) {
    double E = b.E, F = b.F, G = b.G;
    double e1 = b.e1, f1 = b.f1, g1 = b.g1;
    double e2 = b.e2, f2 = b.f2, g2 = b.g2;
    double a2 = e1 * f1 + e2 * f2;
    double a3 = e1 * g1 + e2 * g2;
    double a4 = f1 * g1 + f2 * g2;
    double a5 = 2.0 * (f1 * f1 + f2 * f2);
    double a6 = E * G - 4.0 * F * F;
    double se = e1 * e1 + e2 * e2;
    double sg = g1 * g1 + g2 * g2;
    double a0 = 4.0 * (F * (E * G - 2.0 * F * F) * se - E * a6 * a2 - E * E * F * (a3 + a5) +
                       E * E * E * a4);
    double a1 = 4.0 * (G * a6 * se + 8.0 * E * F * G * a2 + E * E * E * sg -
                       2.0 * E * E * G * (a3 + a5));
    AxialQuartic q;
    q.A[0] = a0 * E * E * E;
    q.A[1] = a1 * E * E * E;
    q.A[2] = -6.0 * a0 * G * E * E + 3.0 * a1 * F * E * E;
    q.A[3] = -8.0 * a0 * E * F * G + a1 * E * (4.0 * F * F - E * G);
    q.A[4] = a0 * G * (E * G - 4.0 * F * F) + a1 * F * (2.0 * F * F - E * G);
    double fs = b.first_scale(), ss = b.second_scale();
    q.scale = fs * fs * fs * fs * fs * fs * ss * ss;
    return q;
}

// Squared distance from the ellipse point of direction d to the ellipse center.
inline double axial_height(const FormBundle& b, const Invariants& inv, const TangentDirection& d) {
    double I = i_inner(b, d, d);
    double q1 = (b.e1 * d.du * d.du + 2.0 * b.f1 * d.du * d.dv + b.g1 * d.dv * d.dv) / I;
    double q2 = (b.e2 * d.du * d.du + 2.0 * b.f2 * d.du * d.dv + b.g2 * d.dv * d.dv) / I;
    return (Vec2(q1, q2) - inv.H).squaredNorm();
}

struct AxialDirections {
    DirectionSet all;
    std::array<int, 2> large_axis{{-1, -1}}; // indices into all.d
    std::array<int, 2> small_axis{{-1, -1}};
    bool degenerate = false;
};

namespace detail {

// Pair the four roots into two I-orthogonal crosses and tag the pair farther
// from the ellipse center as the large-axis cross.
inline void group_crosses(const FormBundle& b, AxialDirections& ad) {
    if (ad.all.count() != 4) return;
    Invariants inv = invariants(b);
    int mate = 1;
    double best = std::abs(i_inner(b, ad.all.d[0], ad.all.d[1])) /
                  (i_norm(b, ad.all.d[0]) * i_norm(b, ad.all.d[1]));
    for (int j = 2; j < 4; ++j) {
        double c = std::abs(i_inner(b, ad.all.d[0], ad.all.d[j])) /
                   (i_norm(b, ad.all.d[0]) * i_norm(b, ad.all.d[j]));
        if (c < best) {
            best = c;
            mate = j;
        }
    }
    std::array<int, 2> cross1{{0, mate}};
    std::array<int, 2> cross2{{0, 0}};
    int w = 0;
    for (int j = 1; j < 4; ++j)
        if (j != mate) cross2[w++] = j;
    double h1 = 0.5 * (axial_height(b, inv, ad.all.d[cross1[0]]) +
                       axial_height(b, inv, ad.all.d[cross1[1]]));
    double h2 = 0.5 * (axial_height(b, inv, ad.all.d[cross2[0]]) +
                       axial_height(b, inv, ad.all.d[cross2[1]]));
    if (h1 >= h2) {
        ad.large_axis = cross1;
        ad.small_axis = cross2;
    } else {
        ad.large_axis = cross2;
        ad.small_axis = cross1;
    }
}

inline void cluster_push(DirectionSet& out, const TangentDirection& d) {
    for (std::size_t i = 0; i < out.d.size(); ++i) {
        double gap = std::abs(out.d[i].chart_angle() - d.chart_angle());
        gap = std::min(gap, M_PI - gap);
        if (gap < 1e-7) {
            ++out.mult[i];
            return;
        }
    }
    out.d.push_back(d);
    out.mult.push_back(1);
}

} // namespace detail

// Roots of the quartic by companion-matrix eigenvalues, with explicit
// deflation of the [1:0] root whenever the leading coefficient vanishes.
inline AxialDirections axial_directions_quartic(const FormBundle& b, const ToleranceSet& tol) {
    AxialQuartic q = axial_quartic_coefficients(b);
    AxialDirections ad;
    double m = *std::max_element(q.A.begin(), q.A.end(),
                                 [](double x, double y) { return std::abs(x) < std::abs(y); });
    m = std::abs(m);
    if (m < tol.degenerate_eq * std::max(q.scale, 1e-300)) {
        ad.degenerate = true;
        return ad;
    }

    std::vector<double> co(q.A.begin(), q.A.end());
    while (co.size() > 1 && std::abs(co.front()) <= 1e-12 * m) {
        detail::cluster_push(ad.all, TangentDirection::of(1.0, 0.0));
        co.erase(co.begin());
    }
    int n = static_cast<int>(co.size()) - 1;
    if (n >= 1) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) companion(0, i) = -co[i + 1] / co[0];
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
        for (int i = 0; i < n; ++i) {
            std::complex<double> r = es.eigenvalues()[i];
            if (std::abs(r.imag()) < 1e-8 * (1.0 + std::abs(r.real())))
                detail::cluster_push(ad.all, TangentDirection::of(r.real(), 1.0));
        }
    }
    detail::group_crosses(b, ad);
    return ad;
}

// Independent route: dense sampling of N(theta) = |eta(theta) - H|^2 over the
// I-unit circle plus bisection of N' sign changes. Used as the oracle for the
// closed-form coefficients; both routes stay available on purpose.
inline AxialDirections axial_directions_extremal(const FormBundle& b, const ToleranceSet& tol,
                                                 int samples = 1024) {
    Invariants inv = invariants(b);
    auto N = [&](double th) { return (ellipse_point(b, th) - inv.H).squaredNorm(); };
    const double h = 1e-6;
    auto dN = [&](double th) { return N(th + h) - N(th - h); };

    AxialDirections ad;
    CurvatureEllipse ell = curvature_ellipse(b, tol.ellipse_kind);
    if (ell.kind == EllipseKind::circle || ell.kind == EllipseKind::point) {
        ad.degenerate = true;
        return ad;
    }

    double step = M_PI / samples;
    double prev = dN(0.0);
    for (int i = 1; i <= samples; ++i) {
        double th = i * step;
        double cur = dN(th);
        if (prev == 0.0) {
            // The previous sample sits on the critical angle itself; bisecting
            // an interval without a sign change would drift off the root.
            Vec2 d = iso_direction(b, (i - 1) * step);
            detail::cluster_push(ad.all, TangentDirection::of(d[0], d[1]));
        } else if ((prev < 0.0) != (cur < 0.0)) {
            double lo = (i - 1) * step, hi = th;
            double flo = prev;
            for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = dN(mid);
                if (fm == 0.0 || (flo < 0.0) != (fm < 0.0))
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            Vec2 d = iso_direction(b, 0.5 * (lo + hi));
            detail::cluster_push(ad.all, TangentDirection::of(d[0], d[1]));
        }
        prev = cur;
    }
    detail::group_crosses(b, ad);
    return ad;
}

} // namespace r4curv
