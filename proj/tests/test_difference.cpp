#include "oracles.hpp"

#include "sclat/difference.hpp"
#include "sclat/errors.hpp"

#include <doctest.h>

using namespace sclat;

TEST_SUITE("difference") {

TEST_CASE("multi-index enumeration") {
    CHECK(multi_indices_of_order(2, 3).size() == 4);
    CHECK(multi_indices_up_to(3, 2).size() == 10);
    CHECK(MultiIndex{2, 1, 0}.factorial() == 2);
    CHECK(MultiIndex{2, 1, 0}.order() == 3);
    CHECK(falling_factorial(5, 3) == 60);
    CHECK(falling_factorial(-2, 2) == 6);
}

TEST_CASE("forward differences against the binomial stencil") {
    std::mt19937_64 rng(2);
    const LatticeModel m(2, 0.25, 8);
    const LatticeFunction f = random_lattice_function(m, rng);
    for (const MultiIndex& a : multi_indices_up_to(2, 3)) {
        const LatticeFunction d = forward_difference(f, a);
        const LatticeFunction ref = oracle::difference(f, {a[0], a[1]});
        for (std::size_t p = 0; p < m.size(); ++p) CHECK(std::abs(d[p] - ref[p]) < 1e-9);
    }
}

TEST_CASE("difference multiplier on a character") {
    const LatticeModel m(1, 0.5, 8);
    const TorusFunction q = diff_multiplier(MultiIndex{1}, m);
    for (std::size_t t = 0; t < m.size(); ++t)
        CHECK(std::abs(q[t] - (std::polar(1.0, oracle::kTwoPi * m.theta(t, 0)) - 1.0) / 0.5) < 1e-14);
}

TEST_CASE("D^beta on trigonometric modes") {
    const LatticeModel m(1, 0.5, 16);
    for (int j : {-3, 2, 5}) {
        TorusFunction g(m);
        for (std::size_t t = 0; t < m.size(); ++t) g[t] = std::polar(1.0, oracle::kTwoPi * j * m.theta(t, 0));
        const TorusFunction plain = derivative_D(g, MultiIndex{2}, DerivativeKind::plain);
        const TorusFunction falling = derivative_D(g, MultiIndex{2}, DerivativeKind::falling);
        for (std::size_t t = 0; t < m.size(); ++t) {
            CHECK(std::abs(plain[t] - 0.25 * j * j * g[t]) < 1e-12);
            CHECK(std::abs(falling[t] - 0.25 * j * (j - 1) * g[t]) < 1e-12);
        }
    }
}

TEST_CASE("summation by parts for the forward difference") {
    // Σ_k Δf(k) conj(g(k)) = −Σ_k f(k) conj(Δ₋ g(k)) with backward Δ₋.
    std::mt19937_64 rng(3);
    const LatticeModel m(1, 0.5, 16);
    const LatticeFunction f = random_lattice_function(m, rng), g = random_lattice_function(m, rng);
    const LatticeFunction df = forward_difference(f, MultiIndex{1});
    LatticeFunction bg(m);
    for (std::size_t p = 0; p < m.size(); ++p) bg[p] = (g[p] - g[m.shift(p, 0, -1)]) / 0.5;
    CHECK(std::abs(inner(df, g) + inner(f, bg)) < 1e-12);
}

TEST_CASE("generalized difference: multiplier and convolution forms agree") {
    std::mt19937_64 rng(4);
    const LatticeModel m(2, 0.5, 8);
    const LatticeFunction g = random_lattice_function(m, rng);
    TorusFunction q(m);
    for (std::size_t t = 0; t < m.size(); ++t) q[t] = std::sin(oracle::kTwoPi * m.theta(t, 1)) + 0.3 * random_complex(rng);
    const LatticeFunction a = generalized_difference(q, g), b = generalized_difference_convolution(q, g);
    for (std::size_t p = 0; p < m.size(); ++p) CHECK(std::abs(a[p] - b[p]) < 1e-12);
}

TEST_CASE("toroidal Taylor expansion reconstructs f") {
    const LatticeModel m(1, 0.37, 10);
    TorusFunction f(m);
    for (std::size_t t = 0; t < m.size(); ++t) f[t] = std::cos(oracle::kTwoPi * m.theta(t, 0)) + 2.0;
    const TaylorExpansion e = toroidal_taylor(f, 3);
    CHECK(e.branch_points.empty());
    for (std::size_t t = 0; t < m.size(); ++t) {
        const cplx d = taylor_divisor(m.theta(t, 0), m.hbar());
        cplx acc = 0.0, pw = 1.0;
        for (const cplx& c : e.coefficients) {
            acc += pw * c;
            pw *= d;
        }
        acc += pw * e.remainder[t];
        CHECK(std::abs(acc - f[t]) < 1e-10);
    }
}

TEST_CASE("toroidal Taylor flags extra divisor zeros") {
    // θ/ℏ integer at θ = 0.5 when ℏ = 0.5.
    const LatticeModel m(1, 0.5, 8);
    TorusFunction f(m);
    for (std::size_t t = 0; t < m.size(); ++t) f[t] = m.theta(t, 0);
    CHECK(!toroidal_taylor(f, 2).branch_points.empty());
    CHECK_THROWS_AS(toroidal_taylor(f, 2, true), DivisorSingularity);
}

}
