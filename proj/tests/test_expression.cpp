#include "support.hpp"

using Catch::Approx;
using namespace r4curv;

namespace {

double ev(const std::string& src, double u = 0.0, double v = 0.0, ParamMap params = {}) {
    ExprPtr e = parse_expression(src);
    return eval_expression<double>(*e, u, v, params);
}

} // namespace

TEST_CASE("parser precedence and associativity", "[expression]") {
    CHECK(ev("2 + 3 * 4 ^ 2") == Approx(50.0));
    CHECK(ev("2 ^ 3 ^ 2") == Approx(512.0)); // right associative
    CHECK(ev("10 - 4 - 3") == Approx(3.0));  // left associative
    CHECK(ev("12 / 4 / 3") == Approx(1.0));
    CHECK(ev("-u^2", 2.0) == Approx(-4.0)); // exponent binds before negation
    CHECK(ev("(-u)^2", 2.0) == Approx(4.0));
    CHECK(ev("2 * (3 + 4)") == Approx(14.0));
}

TEST_CASE("constants, variables, parameters", "[expression]") {
    CHECK(ev("pi") == Approx(M_PI));
    CHECK(ev("2*pi") == Approx(2.0 * M_PI));
    CHECK(ev("u - v", 5.0, 2.0) == Approx(3.0));
    CHECK(ev("r * cos(u)", 0.0, 0.0, {{"r", 2.0}}) == Approx(2.0));
    CHECK_THROWS_AS(ev("r + 1"), EvalDomainError); // parameter never bound

    ExprPtr e = parse_expression("a * u + b * sin(v) + a");
    std::vector<std::string> params;
    collect_params(*e, params);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    REQUIRE(params == std::vector<std::string>{"a", "b"});
    CHECK(contains_variable(*e));
    CHECK_FALSE(contains_variable(*parse_expression("3 * pi + 1")));
}

TEST_CASE("parse errors carry a byte offset", "[expression]") {
    auto offset_of = [](const std::string& src) {
        try {
            parse_expression(src);
        } catch (const ParseError& p) {
            return p.offset();
        }
        FAIL("expected a parse error for: " << src);
        return std::size_t(0);
    };
    CHECK(offset_of("1 + ") >= 3);
    CHECK(offset_of("sin(u") >= 4);
    CHECK(offset_of("1 + * 2") == 4);
    CHECK(offset_of("frob(u)") == 0); // unknown function name
    CHECK(offset_of("1 2") >= 2);     // trailing garbage
}

TEST_CASE("evaluation failures name the offending subexpression", "[expression]") {
    auto message_of = [](const std::string& src, double u) {
        try {
            ev(src, u);
        } catch (const EvalDomainError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of("log(u)", -1.0).find("log") != std::string::npos);
    CHECK(message_of("sqrt(u - 2)", 0.0).find("sqrt") != std::string::npos);
    CHECK(message_of("1 / u", 0.0).find("u") != std::string::npos);
    CHECK(message_of("u ^ 0.5", -2.0) != "");

    // integer exponents of negative bases are fine
    CHECK(ev("u ^ 3", -2.0) == Approx(-8.0));
    CHECK(ev("u ^ (-2)", -2.0) == Approx(0.25));
}

TEST_CASE("printing then reparsing is a structural fixed point", "[expression]") {
    std::vector<std::string> sources = {
        "cos(u) * (2 + cos(v))", "u^2 - v^2", "-(u + v) / (1 - u*v)",
        "a * sin(u) + b", "sqrt(1 + u^2)", "2 ^ 3 ^ u", "(u - v)^2 * pi",
    };
    for (const auto& src : sources) {
        ExprPtr once = parse_expression(src);
        ExprPtr twice = parse_expression(print_expression(*once));
        CHECK(expr_equal(*once, *twice));
    }

    for (const char* stem : {"plane", "clifford", "square-graph", "equator-sphere",
                             "revolution-torus"}) {
        SurfaceDef s = testsup::fixture(stem);
        for (int k = 0; k < 4; ++k) {
            ExprPtr again = parse_expression(print_expression(*s.component[k]));
            CHECK(expr_equal(*s.component[k], *again));
        }
    }
}

TEST_CASE("printed text also evaluates identically", "[expression]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pt(0.1, 1.4);
    SurfaceDef s = testsup::fixture("revolution-torus");
    for (int k = 0; k < 4; ++k) {
        ExprPtr again = parse_expression(print_expression(*s.component[k]));
        for (int i = 0; i < 10; ++i) {
            double u = pt(rng), v = pt(rng);
            CHECK(eval_expression<double>(*s.component[k], u, v, s.params) ==
                  Approx(eval_expression<double>(*again, u, v, s.params)).margin(1e-15));
        }
    }
}
