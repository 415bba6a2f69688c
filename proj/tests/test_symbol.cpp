#include "oracles.hpp"

#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"
#include "sclat/symbol.hpp"

#include <doctest.h>

using namespace sclat;

TEST_SUITE("symbol") {

TEST_CASE("structural queries and arithmetic") {
    const LatticeModel m(1, 0.5, 8);
    const Symbol a = dsl::tabulate_symbol(dsl::parse("1 + absk"), m);
    const Symbol b = dsl::tabulate_symbol(dsl::parse("cos(2*pi*theta1)"), m);
    CHECK(a.is_k_only());
    CHECK(!a.is_theta_only());
    CHECK(b.is_theta_only());
    const Symbol c = a * b + a - b * cplx(2.0);
    CHECK(std::abs(c(3, 2) - (a(3, 2) * b(3, 2) + a(3, 2) - 2.0 * b(3, 2))) < 1e-15);
    CHECK(b.reflect_theta()(0, 1) == b(0, m.negate(1)));
    CHECK(c.conj()(1, 1) == std::conj(c(1, 1)));
    CHECK_THROWS_AS(a + Symbol::constant(LatticeModel(1, 0.5, 16), 1.0), ModelMismatch);
    CHECK_THROWS_AS(Symbol(m, std::vector<cplx>(3)), ModelMismatch);
}

TEST_CASE("seminorms of a k-only symbol against hand values") {
    // σ(k) = k₁ on n = 1, class (1, 1, 0): Δσ = 1, Δ²σ = 0 away from the seam, D^(β)σ = 0 for β ≥ 1.
    const LatticeModel m(1, 0.5, 16);
    const Symbol s = dsl::tabulate_symbol(dsl::parse("k1"), m).with_class({1.0, 1.0, 0.0});
    const SeminormReport r = seminorm_estimate(s, 2, 1);
    CHECK(r.constant(MultiIndex{1}, MultiIndex{0}) == doctest::Approx(1.0));
    CHECK(r.constant(MultiIndex{2}, MultiIndex{0}) == doctest::Approx(0.0));
    CHECK(r.constant(MultiIndex{0}, MultiIndex{1}) == doctest::Approx(0.0));
    // max |k|/(1+|k|) at the box corner k = −4
    CHECK(r.constant(MultiIndex{0}, MultiIndex{0}) == doctest::Approx(4.0 / 5.0));
    // Including the seam picks up the wrap jump (−4 − 3.5)/ℏ.
    const SeminormReport seam = seminorm_estimate(s, 1, 0, false);
    CHECK(seam.constant(MultiIndex{1}, MultiIndex{0}) > 10.0);
    CHECK_THROWS_AS(seminorm_estimate(dsl::tabulate_symbol(dsl::parse("k1"), m), 1, 1), MissingClassDeclaration);
    CHECK_THROWS_AS(r.constant(MultiIndex{3}, MultiIndex{0}), BadParameter);
}

TEST_CASE("ellipticity") {
    const LatticeModel m(1, 0.5, 32);
    const EllipticityReport yes = ellipticity_check(builtin("example3(c=3)", m), 0.0);
    CHECK(yes.elliptic);
    CHECK(yes.C == doctest::Approx(3.0));
    const EllipticityReport no = ellipticity_check(builtin("example1", m), 0.0);
    CHECK(!no.elliptic);
    const EllipticityReport grow = ellipticity_check(dsl::tabulate_symbol(dsl::parse("1 + absk^2"), m), 2.0);
    CHECK(grow.elliptic);
    CHECK(grow.C == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("built-in catalogue") {
    const LatticeModel m(2, 0.5, 8);
    const Symbol d = builtin("example1(j=2)", m);
    const std::size_t t = 5;
    CHECK(std::abs(d(0, t) - (std::polar(1.0, oracle::kTwoPi * m.theta(t, 1)) - 1.0)) < 1e-15);
    const Symbol t3 = builtin("example3(c=1+i)", m);
    CHECK(std::abs(t3(0, 0) - cplx(1.0, 1.0)) < 1e-15);
    const Symbol w = builtin("weight(2)", m);
    CHECK(w(9, 3).real() == doctest::Approx(std::pow(1.0 + m.abs_k(9), 2.0)));
    CHECK(w.declared_class()->mu == 2.0);
    CHECK(builtin("example2(r=2, s=1)", m).declared_class()->mu == 2.0);
    CHECK_THROWS_AS(builtin("nope", m), UnknownBuiltin);
    CHECK_THROWS_AS(builtin("example1(j=3)", m), BadParameter);
    CHECK_THROWS_AS(builtin("example2(r=-1)", m), BadParameter);
    CHECK_THROWS_AS(builtin("example3(c=3, d=1)", m), BadParameter);
    CHECK_THROWS_AS(builtin("example3(x)", m), BadParameter);
    CHECK_THROWS_AS(builtin("multiplier(k1)", m), UnknownIdentifier);
    CHECK(builtin_catalog().size() == 6);
}

TEST_CASE("asymptotic partial sums") {
    const LatticeModel m(1, 0.5, 8);
    const Symbol a = Symbol::constant(m, 1.0), b = Symbol::constant(m, 2.0);
    const Symbol s = asymptotic_partial_sum({a, b}, {1.0, 0.0}, 2);
    CHECK(s(0, 0) == cplx(3.0));
    CHECK(s.declared_class()->mu == 1.0);
    CHECK_THROWS_AS(asymptotic_partial_sum({a, b}, {0.0, 1.0}, 2), NonDecreasingOrders);
    CHECK_THROWS_AS(asymptotic_partial_sum({a, b}, {1.0, 0.0}, 3), BadParameter);
}

TEST_CASE("amplitude memory budget") {
    const LatticeModel m(2, 0.5, 16);
    CHECK_THROWS_AS(Amplitude(m, 1024), MemoryBudgetExceeded);
    CHECK_NOTHROW(Amplitude(LatticeModel(1, 0.5, 8)));
}

}
