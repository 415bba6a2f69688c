#include "oracles.hpp"

#include "sclat/calculus.hpp"
#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"

#include <doctest.h>

using namespace sclat;

namespace {
Symbol tab(const char* e, const LatticeModel& m) { return dsl::tabulate_symbol(dsl::parse(e), m); }
}

TEST_SUITE("calculus") {

TEST_CASE("exact operations agree with matrix algebra") {
    std::mt19937_64 rng(9);
    const LatticeModel m(2, 0.5, 4);
    const Symbol a = oracle::random_symbol(m, rng), b = oracle::random_symbol(m, rng);
    const Eigen::MatrixXcd Ka = oracle::kernel(a), Kb = oracle::kernel(b);
    CHECK((oracle::kernel(compose_exact(a, b)) - Ka * Kb).norm() < 1e-12);
    CHECK((oracle::kernel(adjoint_exact(a)) - Ka.adjoint()).norm() < 1e-12);
    CHECK((oracle::kernel(transpose_exact(a)) - Ka.transpose()).norm() < 1e-12);
    CHECK(hs_distance(a, a) == doctest::Approx(0.0));
    CHECK(hs_distance(a, b) == doctest::Approx((Ka - Kb).norm()));
    CHECK(spectral_distance(a, b) == doctest::Approx(Eigen::JacobiSVD<Eigen::MatrixXcd>(Ka - Kb).singularValues()(0)));
}

TEST_CASE("composition terms are exact for a linear k factor") {
    // τ = k₁ is affine in k, so Δ²τ = 0 away from the seam and two terms capture σ∘τ there.
    const LatticeModel m(1, 0.5, 16);
    const Symbol sigma = tab("exp(2*pi*i*theta1) + 2", m), tau = tab("k1", m);
    const std::vector<Symbol> terms = composition_terms(sigma, tau, 2);
    const Symbol exact = compose_exact(sigma, tau);
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (m.index(p, 0) == m.points_per_axis() / 2 - 1) continue;  // stencil crosses the seam
        for (std::size_t t = 0; t < m.size(); ++t)
            CHECK(std::abs(terms[0](p, t) + terms[1](p, t) - exact(p, t)) < 1e-12);
    }
}

TEST_CASE("expansion bookkeeping") {
    const LatticeModel m(1, 0.5, 16);
    const Symbol s = tab("(1 + absk)*(2 + cos(2*pi*theta1))", m).with_class({1.0, 1.0, 0.0});
    const ExpansionResult r = adjoint_asymptotic(s, 3);
    CHECK(r.partial_sums.size() == 3);
    CHECK(r.residual_hs.size() == 3);
    CHECK(r.order_drop[2] == doctest::Approx(2.0));
    CHECK(r.residual_hs[0] == doctest::Approx(hs_distance(r.partial_sums[0], r.exact)));
    CHECK_THROWS_AS(compose_asymptotic(s, s, 5), BadParameter);
    CHECK_THROWS_AS(compose_asymptotic(s, Symbol::constant(LatticeModel(1, 0.5, 8), 1.0), 1), ModelMismatch);
}

TEST_CASE("parametrix rules coincide for a single term") {
    const LatticeModel m(1, 0.5, 16);
    const Symbol U = tab("(1 + absk^2)*(2 + cos(2*pi*theta1))", m).with_class({2.0, 1.0, 0.0});
    const ParametrixResult a = parametrix({U}, 2, ParametrixRule::complete);
    const ParametrixResult b = parametrix({U}, 2, ParametrixRule::literal);
    for (std::size_t j = 0; j < a.V.size(); ++j) CHECK(oracle::max_abs_diff(a.V[j], b.V[j]) < 1e-13);
    CHECK(a.term_counts.size() == 3);
    CHECK(a.term_counts[0] == 1);
}

TEST_CASE("parametrix with two terms") {
    const LatticeModel m(1, 0.5, 16);
    const Symbol U0 = tab("(1 + absk^2)*(2 + cos(2*pi*theta1))", m).with_class({2.0, 1.0, 0.0});
    const Symbol U1 = tab("k1*sin(2*pi*theta1)", m);
    const ParametrixResult c = parametrix({U0, U1}, 2, ParametrixRule::complete);
    const ParametrixResult l = parametrix({U0, U1}, 2, ParametrixRule::literal);
    CHECK(c.term_counts.back() > l.term_counts.back());
    CHECK(c.left_hs.back() < c.left_hs.front());
}

TEST_CASE("parametrix preconditions") {
    const LatticeModel m(1, 0.5, 16);
    CHECK_THROWS_AS(parametrix({builtin("example1", m)}, 1), NotElliptic);
    // Elliptic for large |k| but zero at k = 0, θ = 0.
    const Symbol z = tab("3*absk + cos(2*pi*theta1) - 1", m).with_class({1.0, 1.0, 0.0});
    CHECK_THROWS_AS(parametrix({z}, 1), SymbolVanishesOnGrid);
}

}
