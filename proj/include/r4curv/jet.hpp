#pragma once

#include <cmath>

#include "r4curv/errors.hpp"

namespace r4curv {

// Truncated second-order Taylor data of a scalar function of (u, v).
// Arithmetic propagates value, both first partials and the three second
// partials, so evaluating an expression tree on Jet2 inputs yields exact
// derivatives of the whole expression.
struct Jet2 {
    double v = 0.0;   // value
    double du = 0.0;  // d/du
    double dv = 0.0;  // d/dv
    double duu = 0.0; // d2/du2
    double duv = 0.0; // d2/dudv
    double dvv = 0.0; // d2/dv2

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2 variable_u(double u0) { return {u0, 1, 0, 0, 0, 0}; }
    static Jet2 variable_v(double v0) { return {v0, 0, 1, 0, 0, 0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}

inline Jet2 operator-(const Jet2& a) {
    return {-a.v, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu,
            a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
            a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv};
}

inline Jet2 operator*(double c, const Jet2& a) {
    return {c * a.v, c * a.du, c * a.dv, c * a.duu, c * a.duv, c * a.dvv};
}

inline Jet2 operator*(const Jet2& a, double c) { return c * a; }
inline Jet2 operator+(const Jet2& a, double c) { return a + Jet2::constant(c); }
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return a - Jet2::constant(c); }
inline Jet2 operator-(double c, const Jet2& a) { return Jet2::constant(c) - a; }

// Composition with a scalar function h given value/first/second derivative at a.v.
inline Jet2 jet_chain(const Jet2& a, double h0, double h1, double h2) {
    return {h0,
            h1 * a.du,
            h1 * a.dv,
            h2 * a.du * a.du + h1 * a.duu,
            h2 * a.du * a.dv + h1 * a.duv,
            h2 * a.dv * a.dv + h1 * a.dvv};
}

inline Jet2 inverse(const Jet2& a) {
    if (a.v == 0.0) throw EvalDomainError("division by zero");
    double iv = 1.0 / a.v;
    return jet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
inline Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
inline Jet2 operator/(double c, const Jet2& a) { return c * inverse(a); }

inline Jet2 sin(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return jet_chain(a, s, c, -s);
}

inline Jet2 cos(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return jet_chain(a, c, -s, -c);
}

inline Jet2 tan(const Jet2& a) {
    double c = std::cos(a.v);
    if (c == 0.0) throw EvalDomainError("tan at a pole");
    double t = std::tan(a.v);
    double sec2 = 1.0 + t * t;
    return jet_chain(a, t, sec2, 2.0 * t * sec2);
}

inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return jet_chain(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (a.v <= 0.0) throw EvalDomainError("log of a non-positive value");
    double iv = 1.0 / a.v;
    return jet_chain(a, std::log(a.v), iv, -iv * iv);
}

inline Jet2 sqrt(const Jet2& a) {
    if (a.v <= 0.0) throw EvalDomainError("sqrt of a non-positive value");
    double r = std::sqrt(a.v);
    return jet_chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

inline Jet2 sinh(const Jet2& a) {
    double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_chain(a, s, c, s);
}

inline Jet2 cosh(const Jet2& a) {
    double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_chain(a, c, s, c);
}

// Integer powers stay exact for any base, including zero and negatives.
inline Jet2 pow_int(const Jet2& a, long n) {
    if (n < 0) return inverse(pow_int(a, -n));
    Jet2 acc = Jet2::constant(1.0);
    Jet2 base = a;
    for (long k = n; k > 0; k >>= 1) {
        if (k & 1) acc = acc * base;
        base = base * base;
    }
    return acc;
}

inline Jet2 pow(const Jet2& a, double p) {
    double ip = 0.0;
    if (std::modf(p, &ip) == 0.0 && std::abs(ip) < 64.0) return pow_int(a, static_cast<long>(ip));
    if (a.v <= 0.0) throw EvalDomainError("non-integer power of a non-positive base");
    double h0 = std::pow(a.v, p);
    return jet_chain(a, h0, p * h0 / a.v, p * (p - 1.0) * h0 / (a.v * a.v));
}

} // namespace r4curv
