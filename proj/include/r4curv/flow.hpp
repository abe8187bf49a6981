#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "r4curv/axial.hpp"
#include "r4curv/directions.hpp"
#include "r4curv/surface.hpp"

namespace r4curv {

enum class LineField {
    asymptotic1,
    asymptotic2,
    mean1,
    mean2,
    nu_min,
    nu_max,
    axial_large,
    axial_small,
};

inline const char* to_string(LineField f) {
    switch (f) {
    case LineField::asymptotic1: return "asym1";
    case LineField::asymptotic2: return "asym2";
    case LineField::mean1: return "mean1";
    case LineField::mean2: return "mean2";
    case LineField::nu_min: return "nu-min";
    case LineField::nu_max: return "nu-max";
    case LineField::axial_large: return "axial-large";
    case LineField::axial_small: return "axial-small";
    }
    return "?";
}

inline std::optional<LineField> parse_line_field(const std::string& s) {
    for (LineField f :
         {LineField::asymptotic1, LineField::asymptotic2, LineField::mean1, LineField::mean2,
          LineField::nu_min, LineField::nu_max, LineField::axial_large, LineField::axial_small})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

// Crosses carry two orthogonal lines, so their angular period halves.
inline bool is_cross_field(LineField f) {
    return f == LineField::axial_large || f == LineField::axial_small;
}

inline double field_period(LineField f) { return is_cross_field(f) ? M_PI / 2.0 : M_PI; }

struct NormalField {
    // Shared, not owned: samplers copy the spec and the trees are immutable.
    std::array<std::shared_ptr<const ExprNode>, 4> component;

    Vec4 eval(double u, double v, const ParamMap& params) const {
        Vec4 n;
        for (int i = 0; i < 4; ++i) n[i] = eval_expression<double>(*component[i], u, v, params);
        double len = n.norm();
        if (len < 1e-12) throw NotNormal("normal field vanishes");
        return n / len;
    }
};

struct FieldSpec {
    LineField kind = LineField::asymptotic1;
    std::optional<NormalField> nu; // required by nu-min / nu-max
};

// Candidate tangent lines of the field at a parameter point. Empty result
// means the field is undefined (equation degenerate, cross unresolved).
using FieldSampler = std::function<std::vector<TangentDirection>(double, double)>;

inline FieldSampler make_field_sampler(const SurfaceDef& s, const FieldSpec& spec,
                                       const ToleranceSet& tol) {
    return [&s, spec, tol](double u, double v) -> std::vector<TangentDirection> {
        FrameData fr = frame_at(s, u, v, tol.regularity);
        FormBundle b = fundamental_forms(fr);
        switch (spec.kind) {
        case LineField::asymptotic1:
        case LineField::asymptotic2: {
            DirectionSet ds = asymptotic_directions(b, tol);
            if (ds.degenerate) return {};
            return ds.d;
        }
        case LineField::mean1:
        case LineField::mean2: {
            DirectionSet ds = mean_directions(b, tol);
            if (ds.degenerate) return {};
            return ds.d;
        }
        case LineField::nu_min:
        case LineField::nu_max: {
            double uw = s.u_range.wrap(u), vw = s.v_range.wrap(v);
            Vec4 nu = spec.nu->eval(uw, vw, s.params);
            NuForm nf = nu_second_form(fr, nu);
            DirectionSet ds = nu_principal_directions(b, nf, tol);
            if (ds.degenerate || ds.count() != 2) return {};
            auto normal_curv = [&](const TangentDirection& d) {
                return (nf.e * d.du * d.du + 2.0 * nf.f * d.du * d.dv + nf.g * d.dv * d.dv) /
                       i_inner(b, d, d);
            };
            bool first_min = normal_curv(ds.d[0]) <= normal_curv(ds.d[1]);
            bool want_min = spec.kind == LineField::nu_min;
            return {ds.d[(first_min == want_min) ? 0 : 1]};
        }
        case LineField::axial_large:
        case LineField::axial_small: {
            AxialDirections ad = axial_directions_quartic(b, tol);
            if (ad.degenerate || ad.all.count() != 4) return {};
            const auto& idx =
                spec.kind == LineField::axial_large ? ad.large_axis : ad.small_axis;
            return {ad.all.d[idx[0]], ad.all.d[idx[1]]};
        }
        }
        return {};
    };
}

enum class FlowEnd { boundary, singularity, closed, max_steps };

inline const char* to_string(FlowEnd e) {
    switch (e) {
    case FlowEnd::boundary: return "boundary";
    case FlowEnd::singularity: return "singularity";
    case FlowEnd::closed: return "closed";
    case FlowEnd::max_steps: return "max-steps";
    }
    return "?";
}

struct FlowVertex {
    double u, v; // unwrapped chart coordinates
    Vec4 p;
};

struct FlowCurve {
    std::vector<FlowVertex> pts;
    FlowEnd forward_end = FlowEnd::max_steps;
    FlowEnd backward_end = FlowEnd::max_steps;
    bool closed() const { return forward_end == FlowEnd::closed; }
};

namespace detail {

inline double interval_gap(const DomainInterval& r, double a, double b) {
    double d = b - a;
    if (!r.periodic) return std::abs(d);
    double span = r.span();
    d = std::fmod(d, span);
    if (d < 0) d += span;
    return std::min(d, span - d);
}

// Pick the candidate line nearest in angle to ref, resolve its sign against
// ref, and reject the step when two distinct lines compete within amb_tol.
inline std::optional<Eigen::Vector2d> align_direction(const std::vector<TangentDirection>& cand,
                                                      const Eigen::Vector2d& ref,
                                                      double amb_tol) {
    if (cand.empty()) return std::nullopt;
    double ref_angle = std::atan2(ref[1], ref[0]);
    auto line_gap = [&](const TangentDirection& d) {
        double g = std::fmod(std::abs(d.chart_angle() - ref_angle), M_PI);
        return std::min(g, M_PI - g);
    };
    std::size_t best = 0;
    double bg = line_gap(cand[0]);
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < cand.size(); ++i) {
        double g = line_gap(cand[i]);
        if (g < bg) {
            second = bg;
            bg = g;
            best = i;
        } else {
            second = std::min(second, g);
        }
    }
    if (cand.size() > 1 && second - bg < amb_tol) return std::nullopt;
    Eigen::Vector2d w(cand[best].du, cand[best].dv);
    if (w.dot(ref) < 0) w = -w;
    return w;
}

} // namespace detail

struct FlowOptions {
    double step = 1e-3; // arc length per step in the surface metric
    int max_steps = 20000;
    double ambiguity = 1e-3; // rad; closer competing lines abort the trace
};

// Trace one integral curve of the field from (u0,v0), both ways from the seed.
// Fixed-step RK4 at unit surface speed; vertices keep unwrapped coordinates.
inline FlowCurve integrate_line_field(const SurfaceDef& s, const FieldSampler& field, double u0,
                                      double v0, const FlowOptions& opt, const ToleranceSet& tol,
                                      int seed_branch = 0) {
    auto inside = [&](double u, double v) {
        return (s.u_range.periodic || s.u_range.contains(u)) &&
               (s.v_range.periodic || s.v_range.contains(v));
    };
    if (!inside(u0, v0)) throw SeedDegenerate("seed outside the surface domain");

    std::vector<TangentDirection> seed_cand;
    try {
        seed_cand = field(u0, v0);
    } catch (const std::runtime_error&) {
        throw SeedDegenerate("field evaluation failed at the seed");
    }
    if (seed_cand.empty()) throw SeedDegenerate("field is undefined at the seed");
    std::sort(seed_cand.begin(), seed_cand.end(),
              [](const TangentDirection& a, const TangentDirection& b) {
                  return a.chart_angle() < b.chart_angle();
              });
    std::size_t pick = std::min<std::size_t>(seed_branch, seed_cand.size() - 1);
    Eigen::Vector2d d0(seed_cand[pick].du, seed_cand[pick].dv);

    auto velocity = [&](double u, double v,
                        const Eigen::Vector2d& ref) -> std::optional<Eigen::Vector2d> {
        std::vector<TangentDirection> cand;
        try {
            cand = field(u, v);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        auto w = detail::align_direction(cand, ref, opt.ambiguity);
        if (!w) return std::nullopt;
        FrameData fr = frame_at(s, u, v, tol.regularity);
        FormBundle b = fundamental_forms(fr);
        double sp = std::sqrt(b.E * (*w)[0] * (*w)[0] + 2.0 * b.F * (*w)[0] * (*w)[1] +
                              b.G * (*w)[1] * (*w)[1]);
        return *w / sp;
    };

    auto make_vertex = [&](double u, double v) {
        FlowVertex fv;
        fv.u = u;
        fv.v = v;
        std::array<double, 4> p = eval_position(s, u, v);
        fv.p = Vec4(p[0], p[1], p[2], p[3]);
        return fv;
    };

    auto trace = [&](Eigen::Vector2d dir, std::vector<FlowVertex>& out) -> FlowEnd {
        double u = u0, v = v0;
        Eigen::Vector2d ref = dir;
        out.push_back(make_vertex(u, v));
        for (int step_i = 0; step_i < opt.max_steps; ++step_i) {
            auto k1 = velocity(u, v, ref);
            if (!k1) return FlowEnd::singularity;
            double h = opt.step;
            auto k2 = velocity(u + 0.5 * h * (*k1)[0], v + 0.5 * h * (*k1)[1], *k1);
            if (!k2) return FlowEnd::singularity;
            auto k3 = velocity(u + 0.5 * h * (*k2)[0], v + 0.5 * h * (*k2)[1], *k2);
            if (!k3) return FlowEnd::singularity;
            auto k4 = velocity(u + h * (*k3)[0], v + h * (*k3)[1], *k3);
            if (!k4) return FlowEnd::singularity;
            Eigen::Vector2d du = (h / 6.0) * (*k1 + 2.0 * (*k2) + 2.0 * (*k3) + *k4);
            double nu_ = u + du[0], nv_ = v + du[1];
            if (!inside(nu_, nv_)) return FlowEnd::boundary;
            u = nu_;
            v = nv_;
            ref = du.normalized();
            out.push_back(make_vertex(u, v));
            if (step_i > 4) {
                double gu = detail::interval_gap(s.u_range, u, u0);
                double gv = detail::interval_gap(s.v_range, v, v0);
                double ang = std::fmod(std::abs(std::atan2(ref[1], ref[0]) -
                                                std::atan2(dir[1], dir[0])),
                                       M_PI);
                ang = std::min(ang, M_PI - ang);
                if (std::hypot(gu, gv) < 0.5 * opt.step && ang < 0.3) {
                    out.push_back(make_vertex(u0, v0));
                    return FlowEnd::closed;
                }
            }
        }
        return FlowEnd::max_steps;
    };

    std::vector<FlowVertex> fwd, bwd;
    FlowCurve c;
    c.forward_end = trace(d0, fwd);
    if (c.forward_end == FlowEnd::closed) {
        c.pts = std::move(fwd);
        c.backward_end = FlowEnd::closed;
        return c;
    }
    c.backward_end = trace(-d0, bwd);
    c.pts.assign(bwd.rbegin(), bwd.rend());
    c.pts.pop_back(); // seed appears once, from the forward half
    c.pts.insert(c.pts.end(), fwd.begin(), fwd.end());
    return c;
}

} // namespace r4curv
