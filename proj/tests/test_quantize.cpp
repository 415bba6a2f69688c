#include "oracles.hpp"

#include "sclat/dsl.hpp"
#include "sclat/quantize.hpp"

#include <doctest.h>

#include <sstream>

using namespace sclat;

TEST_SUITE("quantize") {

TEST_CASE("apply matches the kernel oracle on every path") {
    std::mt19937_64 rng(7);
    const LatticeModel m(2, 0.5, 4);
    const LatticeFunction f = random_lattice_function(m, rng);
    const std::vector<Symbol> symbols{
        oracle::random_symbol(m, rng),
        dsl::tabulate_symbol(dsl::parse("cos(2*pi*theta1) + i*sin(2*pi*theta2)"), m),
        dsl::tabulate_symbol(dsl::parse("exp(-absk^2) + k1"), m),
    };
    for (const Symbol& s : symbols) {
        const Eigen::VectorXcd ref = oracle::kernel(s) * oracle::vec(f);
        const Eigen::VectorXcd got = oracle::vec(apply(s, f));
        CHECK((ref - got).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("kernel of the shift symbol") {
    const LatticeModel m(1, 0.5, 8);
    const KernelMatrix K = kernel(builtin("example1", m));
    // (D f)(k) = f(k + ℏ) − f(k)
    for (std::size_t p = 0; p < m.size(); ++p)
        for (std::size_t q = 0; q < m.size(); ++q) {
            const double expect = (q == m.shift(p, 0, 1) ? 1.0 : 0.0) - (q == p ? 1.0 : 0.0);
            CHECK(std::abs(K.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) - expect) < 1e-14);
        }
}

TEST_CASE("extract_symbol inverts the oracle kernel") {
    std::mt19937_64 rng(8);
    const LatticeModel m(1, 0.25, 8);
    const Eigen::MatrixXcd K = Eigen::MatrixXcd::Random(8, 8);
    const Symbol s = extract_symbol({m, K});
    CHECK(oracle::max_abs_diff(s, oracle::symbol_of(K, m)) < 1e-13);
}

TEST_CASE("kernel decay classification") {
    const LatticeModel m(1, 0.5, 32);
    CHECK(kernel_decay_report(dsl::tabulate_symbol(dsl::parse("1 + absk"), m), 2).kind == DecayKind::infinite);
    const KernelDecayReport c = kernel_decay_report(builtin("example3", m), 2);
    CHECK(c.kind == DecayKind::compact);
    CHECK(c.support_radius == 1);
    const KernelDecayReport d =
        kernel_decay_report(dsl::tabulate_symbol(dsl::parse("1/(1.5 + cos(2*pi*theta1))"), m), 3);
    CHECK(d.kind == DecayKind::measured);
    CHECK(d.exponent > 1.0);
    CHECK(d.rows.size() == 4);
}

TEST_CASE("amplitudes independent of l reduce exactly to symbols") {
    const LatticeModel m(1, 0.5, 8);
    const Amplitude a = dsl::tabulate_amplitude(dsl::parse("k1 + cos(2*pi*theta1)"), m);
    const Symbol s = dsl::tabulate_symbol(dsl::parse("k1 + cos(2*pi*theta1)"), m);
    CHECK((amplitude_matrix(a) - oracle::kernel(s)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(oracle::max_abs_diff(amplitude_to_symbol(a, 1), s) < 1e-13);
}

TEST_CASE("amplitude expansion against the exact symbol") {
    // a(k,l,θ) = l·e^{2πiθ}: Op(a) f(k) = (l f)(k+ℏ), symbol (k+ℏ)e^{2πiθ} = a + Δ_l D^{(1)} a exactly.
    const LatticeModel m(1, 0.5, 16);
    const Amplitude a = dsl::tabulate_amplitude(dsl::parse("l1*exp(2*pi*i*theta1)"), m);
    const Symbol exact = extract_symbol({m, amplitude_matrix(a)});
    const Symbol two = amplitude_to_symbol(a, 2);
    double interior = 0.0;
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (std::abs(m.index(p, 0)) > 6) continue;
        for (std::size_t t = 0; t < m.size(); ++t) interior = std::max(interior, std::abs(two(p, t) - exact(p, t)));
    }
    CHECK(interior < 1e-12);
    LatticeFunction f(m);
    f[m.shift(0, 0, 2)] = 1.0;
    const LatticeFunction g = apply_amplitude(a, f);
    CHECK(std::abs(g[m.shift(0, 0, 1)] - 1.0) < 1e-13);
}

TEST_CASE("kernel CSV export") {
    const LatticeModel m(1, 0.5, 4);
    std::ostringstream os;
    write_kernel_csv(kernel(Symbol::constant(m, 2.0)), os);
    const std::string s = os.str();
    CHECK(s.rfind("row,col,re,im\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 17);
}

}
