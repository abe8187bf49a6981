#pragma once

#include <deque>
#include <optional>
#include <string>

#include "r4curv/winding.hpp"

namespace r4curv {

struct ClassifiedPoint {
    std::string type;
    bool sentinel = false; // channel degenerate at (almost) every point
    double u = 0.0, v = 0.0;
    double residual = 0.0;
    std::optional<double> index;
};

struct ClassifyOptions {
    int scan = 48; // samples per axis for the coarse scans
    std::optional<NormalField> nu;
    bool with_index = true;
};

namespace detail {

struct Located {
    double u, v, residual;
};

// Shrinking 3x3 pattern search around a seed; robust to the kinks that
// |Delta| and the ellipse axis gap have at their zeros.
template <class G>
Located refine_minimum(const G& g, const SurfaceDef& s, double u, double v, double w) {
    auto clampd = [](const DomainInterval& r, double x) {
        if (r.periodic) return x;
        double eps = 1e-9 * r.span();
        return std::clamp(x, r.lo + eps, r.hi - eps);
    };
    double best = g(u, v);
    for (int it = 0; it < 80 && w > 1e-12; ++it) {
        double bu = u, bv = v;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                if (i == 0 && j == 0) continue;
                double cu = clampd(s.u_range, u + i * w);
                double cv = clampd(s.v_range, v + j * w);
                double val = g(cu, cv);
                if (val < best) {
                    best = val;
                    bu = cu;
                    bv = cv;
                }
            }
        if (bu == u && bv == v) w *= 0.5;
        u = bu;
        v = bv;
    }
    return {u, v, best};
}

template <class G>
std::vector<double> axis_samples(const DomainInterval& r, int n, const G&) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(r.periodic ? r.lo + r.span() * i / n
                                 : r.lo + r.span() * (i + 0.5) / n);
    return out;
}

inline void cluster_add(std::vector<Located>& pts, const Located& c, double merge_dist) {
    for (auto& p : pts)
        if (std::hypot(p.u - c.u, p.v - c.v) < merge_dist) {
            if (c.residual < p.residual) p = c;
            return;
        }
    pts.push_back(c);
}

// Minima of a nonnegative channel function. Returns located zeros, or marks
// the channel degenerate when the function vanishes over most of the grid.
template <class G>
std::vector<Located> scalar_zeros(const G& g, const SurfaceDef& s, int n, double tol,
                                  bool& everywhere, double& typical) {
    std::vector<double> us = axis_samples(s.u_range, n, g);
    std::vector<double> vs = axis_samples(s.v_range, n, g);
    std::vector<std::vector<double>> val(us.size(), std::vector<double>(vs.size()));
    int below = 0, total = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j) {
            double x = g(us[i], vs[j]);
            val[i][j] = x;
            acc = std::max(acc, x);
            ++total;
            if (x < tol) ++below;
        }
    typical = acc;
    everywhere = below > 9 * total / 10;
    if (everywhere) return {};

    std::vector<Located> out;
    double merge = 1e-3 * std::max(s.u_range.span(), s.v_range.span());
    int nu_ = static_cast<int>(us.size()), nv_ = static_cast<int>(vs.size());
    for (int i = 0; i < nu_; ++i)
        for (int j = 0; j < nv_; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (s.u_range.periodic) ii = (ii + nu_) % nu_;
                    if (s.v_range.periodic) jj = (jj + nv_) % nv_;
                    if (ii < 0 || ii >= nu_ || jj < 0 || jj >= nv_) continue;
                    if (val[ii][jj] < val[i][j]) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;
            double w = s.u_range.span() / n;
            Located loc = refine_minimum(g, s, us[i], vs[j], w);
            if (loc.residual < tol) cluster_add(out, loc, merge);
        }
    return out;
}

// Zeros of the plane field (H1,H2) by sign-change subdivision: a cell is kept
// while each component changes sign among its corners.
template <class G2>
std::vector<Located> vector_zeros(const G2& g, const SurfaceDef& s, int n, double tol,
                                  bool& everywhere, double& typical) {
    std::vector<double> us = axis_samples(s.u_range, n + 1, g);
    std::vector<double> vs = axis_samples(s.v_range, n + 1, g);
    // axis_samples with n+1 open-interval samples serve as corner lines too
    struct Cell {
        double u0, v0, u1, v1;
        int depth;
    };
    std::deque<Cell> work;
    int below = 0, total = 0;
    double acc = 0.0;
    std::vector<std::vector<Vec2>> corner(us.size(), std::vector<Vec2>(vs.size()));
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j) {
            corner[i][j] = g(us[i], vs[j]);
            acc = std::max(acc, corner[i][j].norm());
            ++total;
            if (corner[i][j].norm() < tol) ++below;
        }
    typical = acc;
    everywhere = below > 9 * total / 10;
    if (everywhere) return {};

    auto mixed = [](double a, double b, double c, double d) {
        double mn = std::min(std::min(a, b), std::min(c, d));
        double mx = std::max(std::max(a, b), std::max(c, d));
        return mn <= 0.0 && mx >= 0.0;
    };
    for (std::size_t i = 0; i + 1 < us.size(); ++i)
        for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
            const Vec2 &A = corner[i][j], &B = corner[i + 1][j], &C = corner[i][j + 1],
                       &D = corner[i + 1][j + 1];
            if (mixed(A[0], B[0], C[0], D[0]) && mixed(A[1], B[1], C[1], D[1]))
                work.push_back({us[i], vs[j], us[i + 1], vs[j + 1], 0});
        }

    std::vector<Located> out;
    double merge = 1e-3 * std::max(s.u_range.span(), s.v_range.span());
    std::size_t budget = 200000;
    while (!work.empty() && budget-- > 0) {
        Cell c = work.front();
        work.pop_front();
        double mu = 0.5 * (c.u0 + c.u1), mv = 0.5 * (c.v0 + c.v1);
        if (c.depth >= 44) {
            Vec2 h = g(mu, mv);
            // reject sign flips coming from a normal-frame branch switch
            if (h.norm() < tol) cluster_add(out, {mu, mv, h.norm()}, merge);
            continue;
        }
        double uu[3] = {c.u0, mu, c.u1}, vv[3] = {c.v0, mv, c.v1};
        Vec2 cv[3][3];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) cv[a][b] = g(uu[a], vv[b]);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const Vec2 &A = cv[a][b], &B = cv[a + 1][b], &C = cv[a][b + 1],
                           &D = cv[a + 1][b + 1];
                if (mixed(A[0], B[0], C[0], D[0]) && mixed(A[1], B[1], C[1], D[1]))
                    work.push_back({uu[a], vv[b], uu[a + 1], vv[b + 1], c.depth + 1});
            }
    }
    return out;
}

} // namespace detail

// Scans the surface for the distinguished points of each channel: minimal
// (H = 0), inflection (Delta = kN = 0), axiumbilic (circular ellipse), and,
// when a normal field is supplied, its umbilics. Channels that degenerate
// over the whole surface yield a single sentinel row instead of point spam.
inline std::vector<ClassifiedPoint> classify_surface(const SurfaceDef& s,
                                                     const ClassifyOptions& opt,
                                                     const ToleranceSet& tol) {
    auto forms_at = [&](double u, double v) {
        return fundamental_forms(frame_at(s, u, v, tol.regularity));
    };

    struct Channel {
        std::string name;
        std::vector<detail::Located> pts;
        bool everywhere = false;
        double typical = 0.0;
        LineField field; // whose index is evaluated at the located points
    };
    std::vector<Channel> channels;

    {
        Channel ch;
        ch.name = "minimal";
        ch.field = LineField::mean1;
        auto g = [&](double u, double v) -> Vec2 { return invariants(forms_at(u, v)).H; };
        ch.pts = detail::vector_zeros(g, s, opt.scan, tol.minimal, ch.everywhere, ch.typical);
        channels.push_back(std::move(ch));
    }
    {
        Channel ch;
        ch.name = "inflection";
        ch.field = LineField::asymptotic1;
        auto g = [&](double u, double v) {
            Invariants inv = invariants(forms_at(u, v));
            return std::max(std::abs(inv.Delta), std::abs(inv.kN));
        };
        ch.pts = detail::scalar_zeros(g, s, opt.scan, tol.inflection, ch.everywhere, ch.typical);
        channels.push_back(std::move(ch));
    }
    {
        Channel ch;
        ch.name = "axiumbilic";
        ch.field = LineField::axial_large;
        auto g = [&](double u, double v) {
            CurvatureEllipse e = curvature_ellipse(forms_at(u, v), tol.ellipse_kind);
            return e.a - e.b;
        };
        ch.pts = detail::scalar_zeros(g, s, opt.scan, tol.semiumbilic, ch.everywhere, ch.typical);
        channels.push_back(std::move(ch));
    }
    if (opt.nu) {
        Channel ch;
        ch.name = "nu-umbilic";
        ch.field = LineField::nu_min;
        auto g = [&](double u, double v) {
            FrameData fr = frame_at(s, u, v, tol.regularity);
            double uw = s.u_range.wrap(u), vw = s.v_range.wrap(v);
            NuForm nf = nu_second_form(fr, opt.nu->eval(uw, vw, s.params));
            PrincipalPair pp = nu_principal_curvatures(fundamental_forms(fr), nf);
            return pp.k2 - pp.k1;
        };
        ch.pts = detail::scalar_zeros(g, s, opt.scan, tol.umbilicity, ch.everywhere, ch.typical);
        channels.push_back(std::move(ch));
    }

    std::vector<std::string> everywhere_names;
    for (const auto& ch : channels)
        if (ch.everywhere) everywhere_names.push_back(ch.name);

    std::vector<ClassifiedPoint> out;
    double merge = 1e-3 * std::max(s.u_range.span(), s.v_range.span());

    for (std::size_t ci = 0; ci < channels.size(); ++ci) {
        const Channel& ch = channels[ci];
        if (ch.everywhere) {
            ClassifiedPoint row;
            row.type = ch.name + "-everywhere";
            row.sentinel = true;
            row.residual = ch.typical;
            out.push_back(std::move(row));
            continue;
        }
        for (const auto& loc : ch.pts) {
            ClassifiedPoint row;
            row.type = ch.name;
            // join flags: other channels located here, or degenerate globally
            for (std::size_t cj = 0; cj < channels.size(); ++cj) {
                if (cj == ci) continue;
                bool shares = channels[cj].everywhere;
                for (const auto& other : channels[cj].pts)
                    if (std::hypot(other.u - loc.u, other.v - loc.v) < merge) shares = true;
                if (shares) row.type += "+" + channels[cj].name;
            }
            row.u = s.u_range.wrap(loc.u);
            row.v = s.v_range.wrap(loc.v);
            row.residual = loc.residual;
            if (opt.with_index) {
                FieldSpec spec;
                spec.kind = ch.field;
                spec.nu = opt.nu;
                double span = std::min(s.u_range.span(), s.v_range.span());
                double r = 0.05 * span;
                for (const DomainInterval* iv : {&s.u_range, &s.v_range}) {
                    if (iv->periodic) continue;
                    double c = iv == &s.u_range ? loc.u : loc.v;
                    r = std::min(r, 0.7 * std::min(c - iv->lo, iv->hi - c));
                }
                if (r > 1e-4) {
                    try {
                        FieldSampler f = make_field_sampler(s, spec, tol);
                        row.index =
                            singularity_index(s, f, ch.field, loc.u, loc.v, r).index;
                    } catch (const std::runtime_error&) {
                        // loop crossed another singular point or tracking
                        // failed; the index stays unreported
                    }
                }
            }
            out.push_back(std::move(row));
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const ClassifiedPoint& a, const ClassifiedPoint& b) {
        if (a.sentinel != b.sentinel) return a.sentinel < b.sentinel;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return out;
}

} // namespace r4curv
