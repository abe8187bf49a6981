#pragma once

#include <ostream>
#include <vector>

#include "r4curv/flow.hpp"
#include "r4curv/format.hpp"

namespace r4curv {

// A traced curve together with the family it belongs to; the family picks
// the stroke style.
struct FlowTrace {
    LineField field = LineField::asymptotic1;
    FlowCurve curve;
};

inline const char* field_stroke(LineField f) {
    switch (f) {
    case LineField::asymptotic1: return "#1f66ad";
    case LineField::asymptotic2: return "#6f9fd0";
    case LineField::mean1: return "#c23b22";
    case LineField::mean2: return "#e08a76";
    case LineField::nu_min: return "#2e7d32";
    case LineField::nu_max: return "#7b1fa2";
    case LineField::axial_large: return "#e65100";
    case LineField::axial_small: return "#00695c";
    }
    return "#000";
}

// Second members of each pair are dashed so the families stay readable when
// both are drawn in one picture.
inline const char* field_dash(LineField f) {
    switch (f) {
    case LineField::asymptotic2:
    case LineField::mean2:
    case LineField::nu_max:
    case LineField::axial_small: return "6 3";
    default: return "";
    }
}

// Chart-plane picture of traced curves: one path per curve, with a move
// command wherever the wrapped coordinates jump across a periodic seam.
// Endpoints where the trace died on a field singularity get a dot marker.
inline void write_flow_svg(std::ostream& os, const SurfaceDef& s,
                           const std::vector<FlowTrace>& traces, int size = 800) {
    const double margin = 40.0;
    double su = s.u_range.span(), sv = s.v_range.span();
    double scale = (size - 2.0 * margin) / std::max(su, sv);
    auto X = [&](double u) { return margin + (u - s.u_range.lo) * scale; };
    auto Y = [&](double v) { return size - margin - (v - s.v_range.lo) * scale; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "<rect x=\"" << fmt_double(X(s.u_range.lo), 8) << "\" y=\""
       << fmt_double(Y(s.v_range.hi), 8) << "\" width=\"" << fmt_double(su * scale, 8)
       << "\" height=\"" << fmt_double(sv * scale, 8)
       << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    auto dot = [&](const FlowVertex& fv, const char* color) {
        os << "<circle cx=\"" << fmt_double(X(s.u_range.wrap(fv.u)), 8) << "\" cy=\""
           << fmt_double(Y(s.v_range.wrap(fv.v)), 8) << "\" r=\"3.5\" fill=\"" << color
           << "\" stroke=\"#000\" stroke-width=\"0.8\"/>\n";
    };

    for (const FlowTrace& t : traces) {
        const FlowCurve& c = t.curve;
        if (c.pts.empty()) continue;
        os << "<path d=\"";
        double pu = 0, pv = 0;
        bool first = true;
        for (const FlowVertex& fv : c.pts) {
            double wu = s.u_range.wrap(fv.u), wv = s.v_range.wrap(fv.v);
            bool jump = !first && (std::abs(wu - pu) > 0.5 * su || std::abs(wv - pv) > 0.5 * sv);
            os << (first || jump ? "M" : "L") << fmt_double(X(wu), 8) << " "
               << fmt_double(Y(wv), 8);
            pu = wu;
            pv = wv;
            first = false;
        }
        os << "\" fill=\"none\" stroke=\"" << field_stroke(t.field) << "\" stroke-width=\"1.5\"";
        if (const char* dash = field_dash(t.field); *dash)
            os << " stroke-dasharray=\"" << dash << "\"";
        os << "/>\n";
        if (!c.closed()) {
            if (c.backward_end == FlowEnd::singularity) dot(c.pts.front(), field_stroke(t.field));
            if (c.forward_end == FlowEnd::singularity) dot(c.pts.back(), field_stroke(t.field));
        }
    }
    os << "</svg>\n";
}

} // namespace r4curv
