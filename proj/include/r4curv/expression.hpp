#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "r4curv/errors.hpp"
#include "r4curv/format.hpp"
#include "r4curv/jet.hpp"

namespace r4curv {

enum class ExprOp { number, var_u, var_v, param, add, sub, mul, div, pow, neg, call };

enum class ExprFn { sin, cos, tan, exp, log, sqrt, sinh, cosh };

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprNode {
    ExprOp op;
    double number = 0.0;     // op == number
    std::string name;        // op == param
    ExprFn fn = ExprFn::sin; // op == call
    ExprPtr lhs, rhs;        // binaries; unary and call use lhs only
    std::size_t offset = 0;  // byte offset into the source text
};

inline ExprPtr make_node(ExprOp op, std::size_t offset) {
    auto n = std::make_unique<ExprNode>();
    n->op = op;
    n->offset = offset;
    return n;
}

// ---------------------------------------------------------------------------
// Parser. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' atom)?
//   atom   := number | 'pi' | 'u' | 'v' | name | name '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace detail {

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class Parser {
public:
    explicit Parser(std::string_view src) : lx_{src} {}

    ExprPtr run() {
        ExprPtr e = expr();
        lx_.skip_ws();
        if (lx_.pos != lx_.src.size())
            throw ParseError("unexpected trailing input", lx_.pos);
        return e;
    }

private:
    Lexer lx_;

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            std::size_t at = lx_.pos;
            if (lx_.eat('+')) {
                auto n = make_node(ExprOp::add, at);
                n->lhs = std::move(e);
                n->rhs = term();
                e = std::move(n);
            } else if (lx_.eat('-')) {
                auto n = make_node(ExprOp::sub, at);
                n->lhs = std::move(e);
                n->rhs = term();
                e = std::move(n);
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            std::size_t at = lx_.pos;
            if (lx_.eat('*')) {
                auto n = make_node(ExprOp::mul, at);
                n->lhs = std::move(e);
                n->rhs = factor();
                e = std::move(n);
            } else if (lx_.eat('/')) {
                auto n = make_node(ExprOp::div, at);
                n->lhs = std::move(e);
                n->rhs = factor();
                e = std::move(n);
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        std::size_t at = lx_.pos;
        if (lx_.eat('-')) {
            auto n = make_node(ExprOp::neg, at);
            n->lhs = factor();
            return n;
        }
        ExprPtr base = atom();
        lx_.skip_ws();
        at = lx_.pos;
        if (lx_.eat('^')) {
            // Right-associative; recursing into factor also admits 2^-3.
            auto n = make_node(ExprOp::pow, at);
            n->lhs = std::move(base);
            n->rhs = factor();
            return n;
        }
        return base;
    }

    ExprPtr atom() {
        char c = lx_.peek();
        std::size_t at = lx_.pos;
        if (c == '\0') throw ParseError("unexpected end of expression", at);
        if (c == '(') {
            ++lx_.pos;
            ExprPtr e = expr();
            if (!lx_.eat(')')) throw ParseError("expected ')'", lx_.pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(at);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier(at);
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    ExprPtr number(std::size_t at) {
        double value = 0.0;
        const char* first = lx_.src.data() + at;
        const char* last = lx_.src.data() + lx_.src.size();
        auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc() || res.ptr == first)
            throw ParseError("malformed number", at);
        lx_.pos = static_cast<std::size_t>(res.ptr - lx_.src.data());
        auto n = make_node(ExprOp::number, at);
        n->number = value;
        return n;
    }

    ExprPtr identifier(std::size_t at) {
        std::size_t end = at;
        while (end < lx_.src.size() &&
               (std::isalnum(static_cast<unsigned char>(lx_.src[end])) || lx_.src[end] == '_'))
            ++end;
        std::string name(lx_.src.substr(at, end - at));
        lx_.pos = end;
        if (lx_.peek() == '(') return call(name, at);
        if (name == "u") return make_node(ExprOp::var_u, at);
        if (name == "v") return make_node(ExprOp::var_v, at);
        if (name == "pi") {
            auto n = make_node(ExprOp::number, at);
            n->number = M_PI;
            return n;
        }
        auto n = make_node(ExprOp::param, at);
        n->name = std::move(name);
        return n;
    }

    ExprPtr call(const std::string& name, std::size_t at) {
        static const std::map<std::string, ExprFn> table = {
            {"sin", ExprFn::sin},   {"cos", ExprFn::cos},  {"tan", ExprFn::tan},
            {"exp", ExprFn::exp},   {"log", ExprFn::log},  {"sqrt", ExprFn::sqrt},
            {"sinh", ExprFn::sinh}, {"cosh", ExprFn::cosh}};
        auto it = table.find(name);
        if (it == table.end()) throw ParseError("unknown function '" + name + "'", at);
        lx_.eat('(');
        ExprPtr arg = expr();
        if (lx_.peek() == ',') throw ParseError("'" + name + "' takes one argument", lx_.pos);
        if (!lx_.eat(')')) throw ParseError("expected ')'", lx_.pos);
        auto n = make_node(ExprOp::call, at);
        n->fn = it->second;
        n->lhs = std::move(arg);
        return n;
    }
};

} // namespace detail

inline ExprPtr parse_expression(std::string_view src) { return detail::Parser(src).run(); }

// ---------------------------------------------------------------------------
// Structure queries
// ---------------------------------------------------------------------------

inline bool contains_variable(const ExprNode& n) {
    if (n.op == ExprOp::var_u || n.op == ExprOp::var_v) return true;
    if (n.lhs && contains_variable(*n.lhs)) return true;
    if (n.rhs && contains_variable(*n.rhs)) return true;
    return false;
}

inline void collect_params(const ExprNode& n, std::vector<std::string>& out) {
    if (n.op == ExprOp::param) out.push_back(n.name);
    if (n.lhs) collect_params(*n.lhs, out);
    if (n.rhs) collect_params(*n.rhs, out);
}

inline bool expr_equal(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
    case ExprOp::number: return a.number == b.number;
    case ExprOp::param: return a.name == b.name;
    case ExprOp::call:
        if (a.fn != b.fn) return false;
        break;
    default: break;
    }
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !expr_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !expr_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

inline std::string print_expression(const ExprNode& n) {
    auto bin = [&](const char* op) {
        return "(" + print_expression(*n.lhs) + " " + op + " " + print_expression(*n.rhs) + ")";
    };
    switch (n.op) {
    case ExprOp::number: return fmt_double(n.number);
    case ExprOp::var_u: return "u";
    case ExprOp::var_v: return "v";
    case ExprOp::param: return n.name;
    case ExprOp::add: return bin("+");
    case ExprOp::sub: return bin("-");
    case ExprOp::mul: return bin("*");
    case ExprOp::div: return bin("/");
    case ExprOp::pow: return bin("^");
    case ExprOp::neg: return "(-" + print_expression(*n.lhs) + ")";
    case ExprOp::call: {
        static const char* names[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"};
        return std::string(names[static_cast<int>(n.fn)]) + "(" + print_expression(*n.lhs) + ")";
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Evaluation, generic over double and Jet2
// ---------------------------------------------------------------------------

using ParamMap = std::map<std::string, double>;

inline double pow_const(double a, double p) {
    double ip = 0.0;
    if (std::modf(p, &ip) == 0.0 && std::abs(ip) < 64.0) return std::pow(a, p);
    if (a <= 0.0) throw EvalDomainError("non-integer power of a non-positive base");
    return std::pow(a, p);
}

inline Jet2 pow_const(const Jet2& a, double p) { return pow(a, p); }

template <class T> T expr_constant(double c);
template <> inline double expr_constant<double>(double c) { return c; }
template <> inline Jet2 expr_constant<Jet2>(double c) { return Jet2::constant(c); }

inline double scalar_value(double x) { return x; }
inline double scalar_value(const Jet2& x) { return x.v; }

[[noreturn]] inline void domain_failure(const char* what, const ExprNode& n) {
    throw EvalDomainError(std::string(what) + " in '" + print_expression(n) + "'");
}

template <class T>
T eval_expression(const ExprNode& n, const T& u, const T& v, const ParamMap& params) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    switch (n.op) {
    case ExprOp::number: return expr_constant<T>(n.number);
    case ExprOp::var_u: return u;
    case ExprOp::var_v: return v;
    case ExprOp::param: {
        auto it = params.find(n.name);
        if (it == params.end()) throw EvalDomainError("unknown parameter '" + n.name + "'");
        return expr_constant<T>(it->second);
    }
    case ExprOp::add: return eval_expression(*n.lhs, u, v, params) + eval_expression(*n.rhs, u, v, params);
    case ExprOp::sub: return eval_expression(*n.lhs, u, v, params) - eval_expression(*n.rhs, u, v, params);
    case ExprOp::mul: return eval_expression(*n.lhs, u, v, params) * eval_expression(*n.rhs, u, v, params);
    case ExprOp::div: {
        T den = eval_expression(*n.rhs, u, v, params);
        if (scalar_value(den) == 0.0) domain_failure("division by zero", n);
        return eval_expression(*n.lhs, u, v, params) / den;
    }
    case ExprOp::neg: return -eval_expression(*n.lhs, u, v, params);
    case ExprOp::pow: {
        T base = eval_expression(*n.lhs, u, v, params);
        if (!contains_variable(*n.rhs)) {
            double p = eval_expression<double>(*n.rhs, 0.0, 0.0, params);
            double ip = 0.0;
            bool integral = std::modf(p, &ip) == 0.0 && std::abs(ip) < 64.0;
            if (!integral && scalar_value(base) <= 0.0)
                domain_failure("non-integer power of a non-positive base", n);
            if (integral && ip < 0.0 && scalar_value(base) == 0.0)
                domain_failure("division by zero", n);
            return pow_const(base, p);
        }
        // Variable exponent: f^g = exp(g log f), valid for f > 0 only.
        if (scalar_value(base) <= 0.0) domain_failure("variable power of a non-positive base", n);
        T ex = eval_expression(*n.rhs, u, v, params);
        return exp(ex * log(base));
    }
    case ExprOp::call: {
        T a = eval_expression(*n.lhs, u, v, params);
        switch (n.fn) {
        case ExprFn::sin: return sin(a);
        case ExprFn::cos: return cos(a);
        case ExprFn::tan: return tan(a);
        case ExprFn::exp: return exp(a);
        case ExprFn::log:
            if (scalar_value(a) <= 0.0) domain_failure("log of a non-positive value", n);
            return log(a);
        case ExprFn::sqrt:
            if (scalar_value(a) <= 0.0) domain_failure("sqrt of a non-positive value", n);
            return sqrt(a);
        case ExprFn::sinh: return sinh(a);
        case ExprFn::cosh: return cosh(a);
        }
    }
    }
    throw EvalDomainError("corrupt expression tree");
}

} // namespace r4curv
