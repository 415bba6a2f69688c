#include "oracles.hpp"

#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"
#include "sclat/pde.hpp"

#include <doctest.h>

#include <sstream>

using namespace sclat;

namespace {
Symbol tab(const char* e, const LatticeModel& m) { return dsl::tabulate_symbol(dsl::parse(e), m); }
}

TEST_SUITE("pde") {

TEST_CASE("elliptic methods agree with the matrix solve") {
    std::mt19937_64 rng(13);
    const LatticeModel m(1, 0.5, 16);
    const Symbol t = builtin("example3(c=3)", m);
    const LatticeFunction g = random_lattice_function(m, rng);
    const Eigen::VectorXcd ref = oracle::kernel(t).fullPivLu().solve(oracle::vec(g));
    for (EllipticMethod method : {EllipticMethod::inverse_multiplier, EllipticMethod::parametrix, EllipticMethod::direct}) {
        EllipticOptions o;
        o.method = method;
        const EllipticSolution s = solve_elliptic(t, g, o);
        CHECK((oracle::vec(s.f) - ref).norm() < 1e-10);
        CHECK(s.residual < 1e-10);
    }
}

TEST_CASE("parametrix solve on a mixed symbol") {
    std::mt19937_64 rng(14);
    const LatticeModel m(1, 0.5, 16);
    const Symbol U = tab("(1 + absk^2)*(2 + cos(2*pi*theta1))", m).with_class({2.0, 1.0, 0.0});
    EllipticOptions o;
    o.method = EllipticMethod::parametrix;
    const EllipticSolution s = solve_elliptic(U, random_lattice_function(m, rng), o);
    CHECK(s.residual < 0.5);
}

TEST_CASE("elliptic preconditions") {
    const LatticeModel m(1, 0.5, 16);
    const LatticeFunction g = LatticeFunction::delta(m, 0);
    CHECK_THROWS_AS(solve_elliptic(builtin("example1", m), g, {EllipticMethod::inverse_multiplier}), SymbolVanishesOnGrid);
    CHECK_THROWS_AS(solve_elliptic(builtin("example1", m), g, {EllipticMethod::direct}), SingularMatrix);
    CHECK_THROWS_AS(solve_elliptic(builtin("example1", m), g, {EllipticMethod::parametrix}), NotElliptic);
}

TEST_CASE("exact multiplier scheme against the closed form") {
    std::mt19937_64 rng(15);
    const LatticeModel m(1, 0.5, 16);
    const Symbol gen = tab("cos(2*pi*theta1) - 1", m);
    const LatticeFunction w0 = random_lattice_function(m, rng);
    const ParabolicResult r = solve_parabolic({gen, w0, {}, 0.5, 0.125, ParabolicScheme::exact_multiplier});
    const Eigen::MatrixXcd K = oracle::kernel(gen);
    // e^{tK} w0 via the Hermitian eigendecomposition (K is Hermitian here)
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
    const Eigen::VectorXcd expect =
        es.eigenvectors() * (es.eigenvalues().array() * 0.5).exp().matrix().asDiagonal() * es.eigenvectors().adjoint() *
        oracle::vec(w0);
    CHECK((oracle::vec(r.trajectory.back()) - expect).norm() < 1e-12);
    CHECK(r.times.size() == 5);
    CHECK(r.energy.certified);
}

TEST_CASE("sources enter the scheme") {
    const LatticeModel m(1, 0.5, 8);
    const Symbol gen = Symbol::constant(m, -1.0);
    LatticeFunction one(m);
    for (auto& v : one.values) v = 1.0;
    const ParabolicResult r =
        solve_parabolic({gen, LatticeFunction(m), [&](double) { return one; }, 1.0, 0.5, ParabolicScheme::implicit_euler});
    // w1 = (w0 + dt g)/(1 + dt) = 1/3, w2 = (1/3 + 1/2)/(3/2) = 5/9
    CHECK(std::abs(r.trajectory[1][0] - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(r.trajectory[2][0] - 5.0 / 9.0) < 1e-14);
}

TEST_CASE("growing generators and singular steps") {
    std::mt19937_64 rng(16);
    const LatticeModel m(1, 0.5, 8);
    const LatticeFunction w0 = random_lattice_function(m, rng);
    CHECK_THROWS_AS(solve_parabolic({Symbol::constant(m, 2.0), w0, {}, 1.0, 0.5, ParabolicScheme::implicit_euler}),
                    SingularStepMatrix);
    const ParabolicResult r =
        solve_parabolic({Symbol::constant(m, 1.0), w0, {}, 1.0, 0.125, ParabolicScheme::implicit_euler}, false);
    CHECK(r.energy.C2 > 0.0);
    std::ostringstream os;
    write_trajectory_csv(r, os);
    CHECK(os.str().rfind("t,k,re,im\n", 0) == 0);
    CHECK_THROWS_AS(solve_parabolic({Symbol::constant(m, 1.0), w0, {}, 1.0, 0.0, ParabolicScheme::implicit_euler}),
                    BadParameter);
}

}
