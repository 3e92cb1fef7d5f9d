#include <doctest.h>

#include <cmath>

#include "pia/errors.hpp"
#include "pia/expression.hpp"

using namespace pia;

namespace {

double eval(const char* src, double x = 0.0, double a = 0.0) {
    return Expression::parse(src)(x, a);
}

std::size_t error_position(const char* src,
                           Expression::Variables vars = Expression::Variables::XAndA) {
    try {
        Expression::parse(src, vars);
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("expected a parse error for " << src);
    return 0;
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
    CHECK(eval("1 + 2*3") == 7.0);
    CHECK(eval("(1 + 2)*3") == 9.0);
    CHECK(eval("8/4/2") == 1.0);
    CHECK(eval("10 - 4 - 3") == 3.0);
    CHECK(eval("-2*-3") == 6.0);
    CHECK(eval("--1") == 1.0);
    CHECK(eval("1.5e2 + .5") == 150.5);
    CHECK(eval("2*x + a", 3.0, 4.0) == 10.0);
    CHECK(eval("-x*x", 3.0) == -9.0);
}

TEST_CASE("functions") {
    CHECK(eval("sinh(x)", 0.7) == doctest::Approx(std::sinh(0.7)).epsilon(1e-15));
    CHECK(eval("cosh(x)", 0.7) == doctest::Approx(std::cosh(0.7)).epsilon(1e-15));
    CHECK(eval("exp(x)", 0.7) == doctest::Approx(std::exp(0.7)).epsilon(1e-15));
    CHECK(eval("abs(x)", -0.7) == 0.7);
    CHECK(eval("sqrt(6)") == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(eval("max(x, a)", 1.0, 2.0) == 2.0);
    CHECK(eval("min(x, a)", 1.0, 2.0) == 1.0);
    CHECK(eval("sgn(x)", 0.0) == 1.0);
    CHECK(eval("sgn(x)", -1e-300) == -1.0);
    CHECK(eval("-sinh(2*max(x, 0)) - 2*sinh(min(x, 0))", -1.0) == doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-15));
}

TEST_CASE("deep nesting falls back to a heap stack") {
    std::string src = "x";
    for (int k = 0; k < 60; ++k) src = "1 + (" + src + ")";
    CHECK(Expression::parse(src)(2.0) == 62.0);
    // right-nested sums keep every pending operand on the stack
    std::string wide = "x";
    for (int k = 0; k < 50; ++k) wide = "x + (" + wide + ")";
    CHECK(Expression::parse(wide)(1.0) == 51.0);
}

TEST_CASE("parse errors carry positions") {
    CHECK(error_position("") == 0);
    CHECK(error_position("1 +") == 3);
    CHECK(error_position("1 + * 2") == 4);
    CHECK(error_position("foo(x)") == 0);
    CHECK(error_position("sinh x") == 5);
    CHECK(error_position("max(x)") == 5);
    CHECK(error_position("(1 + 2") == 6);
    CHECK(error_position("1 2") == 2);
    CHECK(error_position("x ^ 2") == 2);
    CHECK(error_position("2*a", Expression::Variables::XOnly) == 2);
    CHECK(Expression::parse(" x ").source() == " x ");
}
