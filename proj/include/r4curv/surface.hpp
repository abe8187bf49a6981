#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "r4curv/expression.hpp"

namespace r4curv {

struct DomainInterval {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;

    double span() const { return hi - lo; }
    // Periodic coordinates land in [lo, hi); open ones pass through untouched.
    double wrap(double t) const {
        if (!periodic) return t;
        double s = span();
        double w = std::fmod(t - lo, s);
        if (w < 0.0) w += s;
        return lo + w;
    }
    bool contains(double t) const { return periodic || (t >= lo && t <= hi); }
};

struct SurfaceDef {
    std::string name;
    std::array<ExprPtr, 4> component; // x, y, z, w
    DomainInterval u_range, v_range;
    ParamMap params;
};

using Jet4 = std::array<Jet2, 4>;

inline Jet4 eval_immersion_jet(const SurfaceDef& s, double u, double v) {
    Jet2 ju = Jet2::variable_u(s.u_range.wrap(u));
    Jet2 jv = Jet2::variable_v(s.v_range.wrap(v));
    Jet4 out;
    for (int k = 0; k < 4; ++k) out[k] = eval_expression(*s.component[k], ju, jv, s.params);
    return out;
}

inline std::array<double, 4> eval_position(const SurfaceDef& s, double u, double v) {
    double wu = s.u_range.wrap(u);
    double wv = s.v_range.wrap(v);
    std::array<double, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = eval_expression<double>(*s.component[k], wu, wv, s.params);
    return out;
}

// ---------------------------------------------------------------------------
// File format, line oriented:
//   name = <label>
//   x = <expr>        (same for y, z, w; one component per line)
//   u in [<lo>, <hi>] periodic|open
//   v in [<lo>, <hi>] periodic|open
//   param <name> = <value>
//   # comment
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

inline DomainInterval parse_interval(const std::string& rhs, int line) {
    // "[<lo>, <hi>] periodic" / "[<lo>, <hi>] open"
    std::size_t lb = rhs.find('[');
    std::size_t comma = rhs.find(',', lb);
    std::size_t rb = rhs.find(']', comma);
    if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos)
        throw SurfaceFormatError("malformed domain, expected 'in [a, b] periodic|open'", line);
    auto num = [&](std::string text) {
        text = trim(std::move(text));
        // Accept plain reals and simple multiples of pi: "2*pi", "-pi", "pi".
        try {
            ExprPtr e = parse_expression(text);
            if (contains_variable(*e)) throw ParseError("domain bound must be constant", 0);
            return eval_expression<double>(*e, 0.0, 0.0, {});
        } catch (const ParseError&) {
            throw SurfaceFormatError("malformed domain bound '" + text + "'", line);
        } catch (const EvalDomainError&) {
            throw SurfaceFormatError("malformed domain bound '" + text + "'", line);
        }
    };
    DomainInterval d;
    d.lo = num(rhs.substr(lb + 1, comma - lb - 1));
    d.hi = num(rhs.substr(comma + 1, rb - comma - 1));
    std::string tail = trim(rhs.substr(rb + 1));
    if (tail == "periodic")
        d.periodic = true;
    else if (tail == "open")
        d.periodic = false;
    else
        throw SurfaceFormatError("domain must end with 'periodic' or 'open'", line);
    if (!(d.lo < d.hi)) throw SurfaceFormatError("domain bounds must satisfy lo < hi", line);
    return d;
}

} // namespace detail

// Evaluation without periodic wrapping, used for the edge consistency check.
inline std::array<double, 4> eval_position_raw(const SurfaceDef& s, double u, double v) {
    std::array<double, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = eval_expression<double>(*s.component[k], u, v, s.params);
    return out;
}

inline SurfaceDef parse_surface_text(const std::string& text) {
    SurfaceDef s;
    std::array<bool, 4> have_comp{false, false, false, false};
    bool have_u = false, have_v = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.rfind("param ", 0) == 0) {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw SurfaceFormatError("param needs '='", line_no);
            std::string pname = detail::trim(line.substr(6, eq - 6));
            if (pname.empty()) throw SurfaceFormatError("param needs a name", line_no);
            if (s.params.count(pname))
                throw SurfaceFormatError("duplicate parameter '" + pname + "'", line_no);
            std::string val = detail::trim(line.substr(eq + 1));
            try {
                ExprPtr e = parse_expression(val);
                if (contains_variable(*e))
                    throw SurfaceFormatError("param value must be constant", line_no);
                s.params[pname] = eval_expression<double>(*e, 0.0, 0.0, s.params);
            } catch (const ParseError&) {
                throw SurfaceFormatError("malformed param value '" + val + "'", line_no);
            }
            continue;
        }

        std::size_t eq = line.find('=');
        std::size_t in_kw = line.find(" in ");
        if (in_kw != std::string::npos && (eq == std::string::npos || in_kw < eq)) {
            std::string var = detail::trim(line.substr(0, in_kw));
            DomainInterval d = detail::parse_interval(line.substr(in_kw + 4), line_no);
            if (var == "u") {
                s.u_range = d;
                have_u = true;
            } else if (var == "v") {
                s.v_range = d;
                have_v = true;
            } else {
                throw SurfaceFormatError("unknown domain variable '" + var + "'", line_no);
            }
            continue;
        }

        if (eq == std::string::npos)
            throw SurfaceFormatError("unrecognized line '" + line + "'", line_no);
        std::string key = detail::trim(line.substr(0, eq));
        std::string rhs = detail::trim(line.substr(eq + 1));
        if (key == "name") {
            s.name = rhs;
        } else if (key == "x" || key == "y" || key == "z" || key == "w") {
            int idx = key == "x" ? 0 : key == "y" ? 1 : key == "z" ? 2 : 3;
            if (have_comp[idx])
                throw SurfaceFormatError("duplicate component '" + key + "'", line_no);
            try {
                s.component[idx] = parse_expression(rhs);
            } catch (const ParseError& pe) {
                throw SurfaceFormatError("bad expression for '" + key + "' at offset " +
                                             std::to_string(pe.offset()) + ": " + pe.what(),
                                         line_no);
            }
            have_comp[idx] = true;
        } else {
            throw SurfaceFormatError("unknown key '" + key + "'", line_no);
        }
    }

    const char* names = "xyzw";
    for (int k = 0; k < 4; ++k)
        if (!have_comp[k])
            throw SurfaceFormatError(std::string("missing component '") + names[k] + "'", 0);
    if (!have_u || !have_v) throw SurfaceFormatError("missing domain declaration", 0);

    // Every referenced identifier must be a declared parameter.
    std::vector<std::string> refs;
    for (const auto& c : s.component) collect_params(*c, refs);
    for (const auto& r : refs)
        if (!s.params.count(r))
            throw SurfaceFormatError("undeclared parameter '" + r + "'", 0);

    // Identified edges of periodic coordinates must carry the same immersion values.
    auto edge_gap = [&](bool along_u) {
        double gap = 0.0;
        for (int k = 0; k < 5; ++k) {
            double t = 0.13 + 0.74 * k / 4.0;
            double a0, a1, b0, b1;
            std::array<double, 4> plo, phi;
            if (along_u) {
                a0 = s.u_range.lo;
                a1 = s.u_range.hi;
                b0 = b1 = s.v_range.lo + t * s.v_range.span();
                plo = eval_position_raw(s, a0, b0);
                phi = eval_position_raw(s, a1, b1);
            } else {
                b0 = s.v_range.lo;
                b1 = s.v_range.hi;
                a0 = a1 = s.u_range.lo + t * s.u_range.span();
                plo = eval_position_raw(s, a0, b0);
                phi = eval_position_raw(s, a1, b1);
            }
            for (int i = 0; i < 4; ++i) gap = std::max(gap, std::abs(plo[i] - phi[i]));
        }
        return gap;
    };
    if (s.u_range.periodic && edge_gap(true) > 1e-9)
        throw SurfaceFormatError("u marked periodic but immersion differs at identified edges", 0);
    if (s.v_range.periodic && edge_gap(false) > 1e-9)
        throw SurfaceFormatError("v marked periodic but immersion differs at identified edges", 0);
    return s;
}

inline SurfaceDef load_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SurfaceFormatError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_surface_text(buf.str());
}

} // namespace r4curv
