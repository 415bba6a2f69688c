#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"
#include "sclat/symbol.hpp"

#include <doctest.h>

#include <numbers>

using namespace sclat;

namespace {

cplx eval0(const std::string& s, const dsl::Params& p = {}) {
    dsl::Bindings b;
    b.params = &p;
    return dsl::evaluate(dsl::parse(s), b);
}

} // namespace

TEST_SUITE("dsl") {

TEST_CASE("precedence and associativity") {
    CHECK(eval0("2^3^2") == cplx(512.0));
    CHECK(eval0("-2^2") == cplx(-4.0));
    CHECK(eval0("(-2)^2") == cplx(4.0));
    CHECK(eval0("2 - 3 - 4") == cplx(-5.0));
    CHECK(eval0("8/4/2") == cplx(1.0));
    CHECK(eval0("1 + 2*3") == cplx(7.0));
    CHECK(eval0("2 - -3") == cplx(5.0));
}

TEST_CASE("complex constants and functions") {
    CHECK(std::abs(eval0("exp(i*pi) + 1")) < 1e-15);
    CHECK(eval0("3i") == cplx(0.0, 3.0));
    CHECK(eval0("(1 + i)*(1 - i)") == cplx(2.0));
    CHECK(std::abs(eval0("sqrt(-4)") - cplx(0.0, 2.0)) < 1e-15);
    CHECK(eval0("2^-1") == cplx(0.5));
}

TEST_CASE("variables bind per axis") {
    const double k[] = {1.0, -2.0};
    const double th[] = {0.25, 0.5};
    const dsl::Bindings b{k, {}, th, 0.5, nullptr};
    CHECK(dsl::evaluate(dsl::parse("k2*hbar"), b) == cplx(-1.0));
    CHECK(dsl::evaluate(dsl::parse("sqnorm(k)"), b) == cplx(5.0));
    CHECK(std::abs(dsl::evaluate(dsl::parse("absk^2"), b) - 5.0) < 1e-14);
    CHECK(std::abs(dsl::evaluate(dsl::parse("sin(2*pi*theta1)"), b) - 1.0) < 1e-15);
    CHECK_THROWS_AS(dsl::evaluate(dsl::parse("k3"), b), UnknownIdentifier);
}

TEST_CASE("parse errors carry offsets") {
    try {
        dsl::parse("1 + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(dsl::parse("(1 + 2"), ParseError);
    CHECK_THROWS_AS(dsl::parse("1 $ 2"), ParseError);
    CHECK_THROWS_AS(dsl::parse(""), ParseError);
    CHECK_THROWS_AS(dsl::parse("1e"), ParseError);
}

TEST_CASE("identifier and arity errors") {
    CHECK_THROWS_AS(dsl::parse("tan(theta1)"), UnknownIdentifier);
    CHECK_THROWS_AS(dsl::parse("k + 1"), UnknownIdentifier);
    CHECK_THROWS_AS(dsl::parse("theta0"), UnknownIdentifier);
    CHECK_THROWS_AS(dsl::parse("sin(1, 2)"), ArityError);
    CHECK_THROWS_AS(dsl::parse("sqnorm()"), ArityError);
    CHECK_THROWS_AS(eval0("a + 1"), UnboundIdentifier);
    CHECK(eval0("a + 1", {{"a", 2.0}}) == cplx(3.0));
}

TEST_CASE("evaluation guards") {
    CHECK_THROWS_AS(eval0("1/(1 - 1)"), DivisionNearZero);
    CHECK_THROWS_AS(eval0("2^0.5"), NonIntegerExponent);
    CHECK_THROWS_AS(eval0("0^-1"), DivisionNearZero);
}

TEST_CASE("printing is canonical") {
    for (const char* s : {"1 + 2*k1", "-(k1 - k2)", "2^(3^2)", "(2^3)^2", "exp(-sqnorm(k)/8)", "a*theta1 + 1.5i"}) {
        const dsl::Expr e = dsl::parse(s);
        const std::string once = dsl::print(e);
        CHECK(dsl::print(dsl::parse(once)) == once);
        CHECK(dsl::structurally_equal(e, dsl::parse(once)));
    }
    CHECK(!dsl::structurally_equal(dsl::parse("(2^3)^2"), dsl::parse("2^3^2")));
}

TEST_CASE("introspection and substitution") {
    const dsl::Expr e = dsl::parse("a*k2 + b*theta3 + l1");
    const auto params = dsl::parameters(e);
    CHECK(params.size() == 2);
    CHECK(dsl::max_axis(e, dsl::Family::k) == 2);
    CHECK(dsl::max_axis(e, dsl::Family::theta) == 3);
    CHECK(dsl::uses(e, dsl::Family::l));
    CHECK(!dsl::uses(e, dsl::Family::absk));
    CHECK(dsl::parameters(dsl::substitute(e, {{"a", 1.0}})).size() == 1);
}

TEST_CASE("tabulation") {
    const LatticeModel m(1, 0.5, 8);
    const Symbol s = dsl::tabulate_symbol(dsl::parse("c*k1 + cos(2*pi*theta1)"), m, {{"c", 2.0}});
    const std::size_t p = m.shift(0, 0, 3), t = 2;
    CHECK(std::abs(s(p, t) - (2.0 * 1.5 + std::cos(2 * std::numbers::pi * 0.25))) < 1e-14);
    CHECK_THROWS_AS(dsl::tabulate_symbol(dsl::parse("k2"), m), UnknownIdentifier);
    CHECK_THROWS_AS(dsl::tabulate_symbol(dsl::parse("l1"), m), UnknownIdentifier);
    CHECK_THROWS_AS(dsl::tabulate_symbol(dsl::parse("c"), m), UnboundIdentifier);
    CHECK_THROWS_AS(dsl::tabulate_symbol(dsl::parse("1/k1"), m), DivisionNearZero);
    CHECK_THROWS_AS(dsl::tabulate_torus(dsl::parse("k1"), m), UnknownIdentifier);
    const Amplitude a = dsl::tabulate_amplitude(dsl::parse("k1 - l1"), m);
    CHECK(a.at(p, p, 0) == cplx(0.0));
}

}
