#include "oracles.hpp"

#include "sclat/errors.hpp"
#include "sclat/lattice.hpp"

#include <doctest.h>

using namespace sclat;

TEST_SUITE("lattice") {

TEST_CASE("model validation") {
    CHECK_THROWS_AS(LatticeModel(0, 0.5, 8), InvalidModel);
    CHECK_THROWS_AS(LatticeModel(1, 0.0, 8), InvalidModel);
    CHECK_THROWS_AS(LatticeModel(1, 1.5, 8), InvalidModel);
    CHECK_THROWS_AS(LatticeModel(1, 0.5, 7), InvalidModel);
    CHECK_THROWS_AS(LatticeModel(1, 0.5, 0), InvalidModel);
    CHECK_NOTHROW(LatticeModel(3, 1.0, 2));
}

TEST_CASE("index decoding follows FFT order with axis 0 slowest") {
    const LatticeModel m(2, 0.5, 4);
    CHECK(m.size() == 16);
    // p = d0 * 4 + d1
    CHECK(m.digit(6, 0) == 1);
    CHECK(m.digit(6, 1) == 2);
    CHECK(m.index(6, 1) == -2);
    CHECK(m.index(3, 1) == -1);
    CHECK(m.coordinate(3, 1) == doctest::Approx(-0.5));
    CHECK(m.theta(3, 1) == doctest::Approx(0.75));
    CHECK(m.abs_k(5) == doctest::Approx(0.5 * std::sqrt(2.0)));
    CHECK(m.box_radius() == doctest::Approx(1.0));
}

TEST_CASE("group arithmetic wraps") {
    const LatticeModel m(2, 0.25, 8);
    for (std::size_t p = 0; p < m.size(); p += 5)
        for (std::size_t q = 0; q < m.size(); q += 3) {
            CHECK(m.sub(m.add(p, q), q) == p);
            CHECK(m.add(p, m.negate(p)) == 0);
        }
    const int idx[] = {3, -4};
    const std::size_t p = m.point(idx);
    CHECK(m.index(p, 0) == 3);
    CHECK(m.index(p, 1) == -4);
    CHECK(m.index(m.shift(p, 0, 1), 0) == -4);  // 3 + 1 wraps to −4
    CHECK(m.phase_index(p, p) == ((3 * 3 + (-4) * 4) % 8 + 8) % 8);
}

TEST_CASE("models compare by shape") {
    CHECK(LatticeModel(1, 0.5, 8) == LatticeModel(1, 0.5, 8));
    CHECK(LatticeModel(1, 0.5, 8) != LatticeModel(1, 0.25, 8));
    CHECK_THROWS_AS(require_same_model(LatticeModel(1, 0.5, 8), LatticeModel(1, 0.5, 16), "test"), ModelMismatch);
}

TEST_CASE("forward transform matches direct summation and inverts") {
    std::mt19937_64 rng(1);
    for (auto [n, M] : {std::pair{1, 16}, {2, 8}, {3, 4}}) {
        const LatticeModel m(n, 0.5, M);
        const LatticeFunction f = random_lattice_function(m, rng);
        const TorusFunction F = forward_fourier(f), ref = oracle::fourier(f);
        const LatticeFunction back = inverse_fourier(F);
        for (std::size_t t = 0; t < m.size(); ++t) {
            CHECK(std::abs(F[t] - ref[t]) < 1e-12);
            CHECK(std::abs(back[t] - f[t]) < 1e-14);
        }
        CHECK(l2_norm(F) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
    }
}

TEST_CASE("delta transforms to the character") {
    const LatticeModel m(1, 0.5, 8);
    const std::size_t p = m.shift(0, 0, 3);
    const TorusFunction F = forward_fourier(LatticeFunction::delta(m, p));
    for (std::size_t t = 0; t < m.size(); ++t) CHECK(std::abs(F[t] - std::conj(oracle::character(m, p, t))) < 1e-14);
}

TEST_CASE("weighted norms") {
    const LatticeModel m(1, 0.5, 8);
    LatticeFunction f(m);
    f[m.shift(0, 0, 2)] = 3.0;  // |k| = 1
    CHECK(weighted_l2_norm(f, 1.0) == doctest::Approx(6.0));
    CHECK(weighted_lp_norm(f, 1.0, 2.0) == doctest::Approx(12.0));
    CHECK(weighted_lp_norm(f, std::numeric_limits<double>::infinity(), 0.0) == doctest::Approx(3.0));
    CHECK(m.weights(-1.0)[m.shift(0, 0, 2)] == doctest::Approx(0.5));
    CHECK(inner(f, f) == cplx(9.0));
}

}
