#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "r4curv/axial.hpp"
#include "r4curv/grid.hpp"
#include "r4curv/sphere_fit.hpp"
#include "r4curv/structure.hpp"

namespace r4curv {

enum class ConditionStatus { pass, fail, vacuous };

inline const char* to_string(ConditionStatus s) {
    switch (s) {
    case ConditionStatus::pass: return "pass";
    case ConditionStatus::fail: return "fail";
    case ConditionStatus::vacuous: return "vacuous";
    }
    return "?";
}

struct ConditionResult {
    std::string key;   // a..h, codazzi, projection
    std::string label; // what the condition asserts
    ConditionStatus status = ConditionStatus::vacuous;
    double residual = 0.0; // worst value over the applicable points
    double threshold = 0.0;
    int checked = 0; // applicable points
    int skipped = 0; // points where the condition does not apply
};

enum class SphereFitStatus { pass, fail, not_applicable, hypothesis_violated };

inline const char* to_string(SphereFitStatus s) {
    switch (s) {
    case SphereFitStatus::pass: return "pass";
    case SphereFitStatus::fail: return "fail";
    case SphereFitStatus::not_applicable: return "not-applicable";
    case SphereFitStatus::hypothesis_violated: return "hypothesis-violated";
    }
    return "?";
}

struct VerificationReport {
    std::vector<ConditionResult> conditions;
    SphereFitStatus sphere_status = SphereFitStatus::not_applicable;
    std::optional<SphereFit> sphere;
    double lambda_median = 0.0;
    double lambda_spread = 0.0;
    double min_k_gap = 0.0; // min |K - lambda^2| over the grid
    bool consistent = true;
    bool overall_pass = false;
};

// Unit normal orthogonal to the ellipse's major axis, signed so that
// <H, nu> >= 0. At point ellipses every normal is umbilical, so H itself
// picks the direction (or n1 when H also vanishes); coordinates are in the
// (n1, n2) basis.
struct UmbilicalCandidate {
    Vec2 coords = Vec2::Zero();
    double lambda = 0.0;
};

inline UmbilicalCandidate umbilical_candidate(const Invariants& inv, const CurvatureEllipse& ell,
                                              double lambda_floor) {
    UmbilicalCandidate c;
    if (ell.kind == EllipseKind::point) {
        if (inv.Hnorm <= lambda_floor) {
            c.coords = Vec2(1.0, 0.0); // flat normal data: every normal works
            c.lambda = 0.0;
            return c;
        }
        c.coords = inv.H / inv.Hnorm;
        c.lambda = inv.Hnorm;
        return c;
    }
    Vec2 nu = ell.axis_dir_b;
    if (inv.H.dot(nu) < 0) nu = -nu;
    c.coords = nu;
    c.lambda = inv.H.dot(nu);
    return c;
}

inline Vec4 normal_plane_vector(const FrameData& fr, const Vec2& coords) {
    return coords[0] * fr.n1 + coords[1] * fr.n2;
}

// How far II_nu is from lambda * I, as the worst coefficient difference.
inline double umbilicity_residual(const FrameData& fr, const FormBundle& b,
                                  const UmbilicalCandidate& c) {
    NuForm nf = nu_second_form(fr, normal_plane_vector(fr, c.coords));
    return std::max({std::abs(nf.e - c.lambda * b.E), std::abs(nf.f - c.lambda * b.F),
                     std::abs(nf.g - c.lambda * b.G)});
}

// Resolved umbilical normal at one point. Only segment and point ellipses
// admit one; for the other kinds no normal direction can work and the
// remaining residual would be meaningless.
struct UmbilicalNormal {
    Vec4 nu = Vec4::Zero();
    double lambda = 0.0;
    double residual = 0.0;
};

inline UmbilicalNormal find_umbilical_normal(const FrameData& fr, const ToleranceSet& tol) {
    FormBundle b = fundamental_forms(fr);
    Invariants inv = invariants(b);
    CurvatureEllipse ell = curvature_ellipse(b, tol.ellipse_kind);
    if (ell.kind == EllipseKind::generic || ell.kind == EllipseKind::circle)
        throw EllipseNotSegment("curvature ellipse has positive area, no umbilical normal");
    UmbilicalCandidate c = umbilical_candidate(inv, ell, tol.lambda_floor);
    UmbilicalNormal n;
    n.nu = normal_plane_vector(fr, c.coords);
    n.lambda = c.lambda;
    n.residual = umbilicity_residual(fr, b, c);
    return n;
}

namespace detail {

struct ConditionAccum {
    double max_res = 0.0;
    int checked = 0;
    int skipped = 0;

    void applicable(double r) {
        max_res = std::max(max_res, r);
        ++checked;
    }
    void vacuous() { ++skipped; }

    ConditionResult finish(std::string key, std::string label, double threshold) const {
        ConditionResult r;
        r.key = std::move(key);
        r.label = std::move(label);
        r.threshold = threshold;
        r.residual = max_res;
        r.checked = checked;
        r.skipped = skipped;
        r.status = checked == 0          ? ConditionStatus::vacuous
                   : max_res < threshold ? ConditionStatus::pass
                                         : ConditionStatus::fail;
        return r;
    }
};

// Worst I-angle between each direction of `from` and its nearest line in `to`.
inline double direction_match_angle(const FormBundle& b, const DirectionSet& from,
                                    const DirectionSet& to) {
    double worst = 0.0;
    for (const auto& d : from.d) {
        double best = M_PI;
        for (const auto& t : to.d) best = std::min(best, i_angle(b, d, t));
        worst = std::max(worst, best);
    }
    return worst;
}

inline std::array<double, 5> quadratic_product(const std::array<double, 3>& p,
                                               const std::array<double, 3>& q) {
    return {p[0] * q[0], p[0] * q[1] + p[1] * q[0], p[0] * q[2] + p[1] * q[1] + p[2] * q[0],
            p[1] * q[2] + p[2] * q[1], p[2] * q[2]};
}

// Sine of the angle between x and y: 0 iff parallel. Summing the pairwise
// 2x2 determinants (Lagrange identity) keeps full precision near zero, where
// sqrt(1 - cos^2) would bottom out at sqrt(eps).
template <std::size_t N>
double parallelism_residual(const std::array<double, N>& x, const std::array<double, N>& y) {
    double nx = 0, ny = 0, wedge2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
        for (std::size_t j = i + 1; j < N; ++j) {
            double det = x[i] * y[j] - x[j] * y[i];
            wedge2 += det * det;
        }
    }
    return std::sqrt(wedge2 / (nx * ny));
}

struct PointProbe {
    bool frame_ok = false;
    FormBundle b;
    Invariants inv;
    CurvatureEllipse ell;
    UmbilicalCandidate nu;
    double c_residual = 0.0; // worst coefficient of II_nu - lambda I
    Vec4 position = Vec4::Zero();

    // residual / applicability per condition a..h
    std::array<double, 8> res{};
    std::array<bool, 8> applicable{};
};

} // namespace detail

// Phase-shifted interior sample points for the finite-difference checks; the
// offsets dodge the measure-zero lines where the frame branch can switch.
inline std::vector<GridPoint> probe_points(const SurfaceDef& s, int n) {
    std::vector<GridPoint> out;
    double mu = 0.043, mv = 0.117; // irrational-ish phases
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double fu = 0.08 + 0.84 * (i + 0.5) / n + mu / (n + 1);
            double fv = 0.08 + 0.84 * (j + 0.5) / n + mv / (n + 1);
            out.push_back({s.u_range.lo + fu * s.u_range.span(),
                           s.v_range.lo + fv * s.v_range.span()});
        }
    return out;
}

inline VerificationReport verify_surface(const SurfaceDef& s, const GridSpec& grid,
                                         const ToleranceSet& tol) {
    std::vector<GridPoint> pts = grid_points(s, grid);
    std::vector<detail::PointProbe> probes(pts.size());

    parallel_for(pts.size(), [&](std::size_t i) {
        detail::PointProbe& p = probes[i];
        FrameData fr;
        try {
            fr = frame_at(s, pts[i].u, pts[i].v, tol.regularity);
        } catch (const DegenerateImmersion&) {
            return; // skip non-immersed samples; frame_ok stays false
        }
        p.frame_ok = true;
        p.position = fr.p;
        p.b = fundamental_forms(fr);
        p.inv = invariants(p.b);
        p.ell = curvature_ellipse(p.b, tol.ellipse_kind);
        p.nu = umbilical_candidate(p.inv, p.ell, tol.lambda_floor);
        p.c_residual = umbilicity_residual(fr, p.b, p.nu);

        DirectionSet asym = asymptotic_directions(p.b, tol);
        bool asym_pair = !asym.degenerate && asym.count() == 2;

        // a: the two asymptotic lines are I-orthogonal
        if (asym.degenerate) {
            p.applicable[0] = false;
        } else {
            p.applicable[0] = true;
            p.res[0] = asym_pair ? std::abs(i_inner(p.b, asym.d[0], asym.d[1])) /
                                       (i_norm(p.b, asym.d[0]) * i_norm(p.b, asym.d[1]))
                                 : 1.0;
        }

        // b: the normal curvature vanishes
        p.applicable[1] = true;
        p.res[1] = std::abs(p.inv.kN);

        // c: the candidate normal is umbilical
        p.applicable[2] = true;
        p.res[2] = p.c_residual;

        // d: the ellipse of curvature has zero area; its area times the
        // metric density recovers |kN|, which makes d a second, independent
        // route to the same invariant
        p.applicable[3] = true;
        p.res[3] = p.ell.a * p.ell.b * std::sqrt(p.b.W());

        // e: umbilical with positive factor; filled from c where lambda > 0.
        // When no normal is umbilical at all (c fails), the positive-factor
        // variant fails with it; a clean umbilical normal with zero factor
        // leaves e out of scope instead
        if (p.nu.lambda > tol.lambda_floor || p.c_residual > tol.umbilicity) {
            p.applicable[4] = true;
            p.res[4] = p.c_residual;
        }

        AxialDirections ax = axial_directions_quartic(p.b, tol);
        bool cross_ok = !ax.degenerate && ax.all.count() == 4 && ax.large_axis[0] >= 0;

        // f: asymptotic lines coincide with the large-axis cross
        if (asym.degenerate || p.ell.kind == EllipseKind::point) {
            p.applicable[5] = false;
        } else if (p.ell.kind == EllipseKind::circle) {
            p.applicable[5] = true;
            p.res[5] = 1.0; // no axes to coincide with
        } else if (!asym_pair || !cross_ok) {
            p.applicable[5] = true;
            p.res[5] = 1.0;
        } else {
            DirectionSet large;
            large.d = {ax.all.d[ax.large_axis[0]], ax.all.d[ax.large_axis[1]]};
            large.mult = {1, 1};
            p.applicable[5] = true;
            p.res[5] = detail::direction_match_angle(p.b, asym, large);
        }

        // g: asymptotic lines are the principal lines of the conjugate normal
        if (asym.degenerate) {
            p.applicable[6] = false;
        } else if (!asym_pair) {
            p.applicable[6] = true;
            p.res[6] = 1.0;
        } else {
            Vec2 perp(-p.nu.coords[1], p.nu.coords[0]);
            NuForm nf = nu_second_form(fr, normal_plane_vector(fr, perp));
            DirectionSet pr = nu_principal_directions(p.b, nf, tol);
            if (pr.degenerate || pr.count() != 2) {
                p.applicable[6] = false; // conjugate normal is umbilical: no net
            } else {
                p.applicable[6] = true;
                p.res[6] = detail::direction_match_angle(p.b, asym, pr);
            }
        }

        // h: the axial quartic is proportional to the product of the mean and
        // asymptotic quadratics; inflection points drop out, both forms being
        // degenerate there
        PointClass cls = classify_point(p.inv, p.ell, tol);
        if (cls.inflection) {
            p.applicable[7] = false;
        } else {
            AxialQuartic q = axial_quartic_coefficients(p.b);
            std::array<double, 3> tq{p.b.e1 * p.b.f2 - p.b.e2 * p.b.f1,
                                     p.b.e1 * p.b.g2 - p.b.e2 * p.b.g1,
                                     p.b.f1 * p.b.g2 - p.b.f2 * p.b.g1};
            std::array<double, 3> bq{
                (p.b.e1 * p.b.g2 - p.b.e2 * p.b.g1) * p.b.E +
                    2.0 * (p.b.e2 * p.b.f1 - p.b.e1 * p.b.f2) * p.b.F,
                2.0 * ((p.b.f1 * p.b.g2 - p.b.f2 * p.b.g1) * p.b.E +
                       (p.b.e2 * p.b.f1 - p.b.e1 * p.b.f2) * p.b.G),
                2.0 * (p.b.f1 * p.b.g2 - p.b.f2 * p.b.g1) * p.b.F +
                    (p.b.e2 * p.b.g1 - p.b.e1 * p.b.g2) * p.b.G};
            std::array<double, 5> prod = detail::quadratic_product(bq, tq);
            double qn = 0, pn = 0;
            for (int k = 0; k < 5; ++k) {
                qn = std::max(qn, std::abs(q.A[k]));
                pn = std::max(pn, std::abs(prod[k]));
            }
            double fs = p.b.first_scale(), ss = p.b.second_scale();
            double qfloor = tol.degenerate_eq * std::max(q.scale, 1e-300);
            double pfloor = tol.degenerate_eq * std::max(fs * ss * ss * ss * ss, 1e-300);
            bool qz = qn < qfloor, pz = pn < pfloor;
            if (qz && pz) {
                p.applicable[7] = false; // nothing to compare on either side
            } else if (qz != pz) {
                p.applicable[7] = true;
                p.res[7] = 1.0;
            } else {
                p.applicable[7] = true;
                p.res[7] = detail::parallelism_residual(q.A, prod);
            }
        }
    });

    static const char* keys[8] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    static const char* labels[8] = {
        "asymptotic lines form an orthogonal net",
        "normal curvature vanishes",
        "an umbilical unit normal exists",
        "the curvature ellipse is a segment (zero area)",
        "umbilical normal with positive factor",
        "asymptotic lines are the large-axis cross",
        "asymptotic lines are principal for the conjugate normal",
        "axial quartic factors through mean and asymptotic forms",
    };
    double thresholds[8] = {tol.orthogonality, tol.k_normal,     tol.umbilicity,
                            tol.k_normal,      tol.umbilicity,   tol.coincidence,
                            tol.coincidence,   tol.factorization};

    VerificationReport rep;
    for (int c = 0; c < 8; ++c) {
        detail::ConditionAccum acc;
        for (const auto& p : probes) {
            if (!p.frame_ok) continue;
            if (p.applicable[c])
                acc.applicable(p.res[c]);
            else
                acc.vacuous();
        }
        rep.conditions.push_back(acc.finish(keys[c], labels[c], thresholds[c]));
    }

    // compatibility system: finite-difference Codazzi and frame residuals
    {
        detail::ConditionAccum acc;
        for (const GridPoint& gp : probe_points(s, 5)) {
            try {
                StructureReport sr = structure_report(s, gp.u, gp.v, 1e-5, tol);
                double worst = 0.0;
                for (double r : sr.codazzi) worst = std::max(worst, std::abs(r));
                for (double r : sr.structure) worst = std::max(worst, std::abs(r));
                acc.applicable(worst);
            } catch (const std::runtime_error&) {
                acc.vacuous(); // frame branch switch or edge proximity
            }
        }
        rep.conditions.push_back(
            acc.finish("codazzi", "compatibility equations hold", tol.codazzi));
    }

    // umbilical factor uniformity, and how far K stays from lambda^2
    std::vector<double> lambdas;
    for (const auto& p : probes)
        if (p.frame_ok) lambdas.push_back(p.nu.lambda);
    {
        detail::ConditionAccum acc;
        if (!lambdas.empty()) {
            std::vector<double> sorted = lambdas;
            std::sort(sorted.begin(), sorted.end());
            rep.lambda_median = sorted[sorted.size() / 2];
            rep.lambda_spread = std::max(sorted.back() - rep.lambda_median,
                                         rep.lambda_median - sorted.front());
            acc.applicable(rep.lambda_spread);
        }
        rep.conditions.push_back(
            acc.finish("projection", "umbilical factor is constant", tol.projection));
    }
    rep.min_k_gap = std::numeric_limits<double>::infinity();
    for (const auto& p : probes)
        if (p.frame_ok)
            rep.min_k_gap = std::min(
                rep.min_k_gap,
                std::abs(p.inv.K - rep.lambda_median * rep.lambda_median));
    if (!std::isfinite(rep.min_k_gap)) rep.min_k_gap = 0.0;

    // hypersphere addendum: with a constant positive umbilical factor and K
    // clear of lambda^2 everywhere, the surface must sit on a sphere of
    // radius 1/lambda
    const ConditionResult& proj = rep.conditions.back();
    bool lambda_const = proj.status == ConditionStatus::pass && proj.checked > 0;
    bool lambda_positive = rep.lambda_median > tol.lambda_floor;
    if (!lambda_const || !lambda_positive) {
        rep.sphere_status = SphereFitStatus::not_applicable;
    } else if (rep.min_k_gap <= tol.projection * std::max(1.0, rep.lambda_median *
                                                                   rep.lambda_median)) {
        rep.sphere_status = SphereFitStatus::hypothesis_violated;
    } else {
        std::vector<Vec4> cloud;
        for (const auto& p : probes)
            if (p.frame_ok) cloud.push_back(p.position);
        try {
            SphereFit fit = fit_sphere(cloud);
            rep.sphere = fit;
            double want = 1.0 / rep.lambda_median;
            bool ok = fit.rms < tol.sphere_fit * std::max(1.0, fit.radius) &&
                      std::abs(fit.radius - want) < 1e-6 * std::max(1.0, want);
            rep.sphere_status = ok ? SphereFitStatus::pass : SphereFitStatus::fail;
        } catch (const DegenerateCloud&) {
            rep.sphere_status = SphereFitStatus::fail;
        }
    }

    // the equivalent conditions must agree wherever they are not vacuous
    bool any_pass = false, any_fail = false;
    for (const auto& c : rep.conditions) {
        if (c.key == "codazzi" || c.key == "projection") continue;
        if (c.status == ConditionStatus::pass) any_pass = true;
        if (c.status == ConditionStatus::fail) any_fail = true;
    }
    rep.consistent = !(any_pass && any_fail);

    bool all_ok = true;
    for (const auto& c : rep.conditions) {
        if (c.key == "projection") continue; // reported, not gating: generic
                                             // surfaces have a varying factor
        if (c.status == ConditionStatus::fail) all_ok = false;
    }
    rep.overall_pass = all_ok && rep.consistent &&
                       (rep.sphere_status == SphereFitStatus::pass ||
                        rep.sphere_status == SphereFitStatus::not_applicable);
    return rep;
}

} // namespace r4curv
