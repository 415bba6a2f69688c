#include "sclat/lattice.hpp"
#include "sclat/simd.hpp"

#include <doctest.h>

#include <random>

using namespace sclat;

TEST_SUITE("simd") {

TEST_CASE("vector kernels match the scalar reference") {
    if (!simd::isa_supported(simd::Isa::avx2)) {
        MESSAGE("AVX2 not available; only the scalar path is exercised");
        return;
    }
    std::mt19937_64 rng(5);
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
        std::vector<cplx> a(n), b(n), acc(n);
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = random_complex(rng);
            b[i] = random_complex(rng);
            acc[i] = random_complex(rng);
            w[i] = std::abs(random_complex(rng));
        }
        const cplx c(0.3, -1.2);
        std::vector<cplx> s(n), v(n);
        simd::scalar::mul(a.data(), b.data(), s.data(), n);
        simd::avx2::mul(a.data(), b.data(), v.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-15);
        simd::scalar::mul_real(a.data(), w.data(), s.data(), n);
        simd::avx2::mul_real(a.data(), w.data(), v.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-15);
        s = acc;
        v = acc;
        simd::scalar::fma_scaled(s.data(), a.data(), b.data(), c, n);
        simd::avx2::fma_scaled(v.data(), a.data(), b.data(), c, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-14);
        s = acc;
        v = acc;
        simd::scalar::axpy(s.data(), a.data(), c, n);
        simd::avx2::axpy(v.data(), a.data(), c, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-14);
        const double tol = 1e-14 * std::max<std::size_t>(n, 1);
        CHECK(std::abs(simd::scalar::sum_abs2(a.data(), n) - simd::avx2::sum_abs2(a.data(), n)) <= tol);
        CHECK(std::abs(simd::scalar::weighted_sum_abs2(a.data(), w.data(), n) -
                       simd::avx2::weighted_sum_abs2(a.data(), w.data(), n)) <= tol);
        CHECK(simd::scalar::max_abs(a.data(), n) == simd::avx2::max_abs(a.data(), n));
    }
}

TEST_CASE("aliasing output with input") {
    std::mt19937_64 rng(6);
    std::vector<cplx> a(13), b(13);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = random_complex(rng);
        b[i] = random_complex(rng);
    }
    std::vector<cplx> expect(13);
    simd::scalar::mul(a.data(), b.data(), expect.data(), 13);
    simd::mul(a.data(), b.data(), a.data(), 13);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - expect[i]) <= 1e-15);
}

TEST_CASE("forcing the scalar path") {
    const simd::Isa before = simd::active_isa();
    CHECK(simd::force_isa(simd::Isa::scalar));
    CHECK(simd::active_isa() == simd::Isa::scalar);
    CHECK(std::string(simd::isa_name(simd::Isa::scalar)) == "scalar");
    simd::force_isa(before);
    CHECK(simd::active_isa() == before);
}

}
