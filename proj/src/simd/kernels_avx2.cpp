#include "sclat/simd.hpp"

#include <algorithm>
#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace sclat::simd::avx2 {
namespace {

// One __m256d holds two interleaved complex doubles (re0, im0, re1, im1).

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d widen_pair(const double* w) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(out + i, cmul(load(a + i), load(b + i)));
    if (i < n) scalar::mul(a + i, b + i, out + i, n - i);
}

void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(out + i, _mm256_mul_pd(load(a + i), widen_pair(w + i)));
    if (i < n) scalar::mul_real(a + i, w + i, out + i, n - i);
}

void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept {
    const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d p = cmul(cv, cmul(load(a + i), load(b + i)));
        store(acc + i, _mm256_add_pd(load(acc + i), p));
    }
    if (i < n) scalar::fma_scaled(acc + i, a + i, b + i, c, n - i);
}

void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept {
    const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(acc + i, _mm256_add_pd(load(acc + i), cmul(cv, load(a + i))));
    if (i < n) scalar::axpy(acc + i, a + i, c, n - i);
}

double sum_abs2(const cplx* a, std::size_t n) noexcept {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = load(a + i), y = load(a + i + 2);
        s0 = _mm256_fmadd_pd(x, x, s0);
        s1 = _mm256_fmadd_pd(y, y, s1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load(a + i);
        s0 = _mm256_fmadd_pd(x, x, s0);
    }
    double s = hsum(_mm256_add_pd(s0, s1));
    if (i < n) s += scalar::sum_abs2(a + i, n - i);
    return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load(a + i);
        s = _mm256_fmadd_pd(_mm256_mul_pd(x, x), widen_pair(w + i), s);
    }
    double r = hsum(s);
    if (i < n) r += scalar::weighted_sum_abs2(a + i, w + i, n - i);
    return r;
}

double max_abs(const cplx* a, std::size_t n) noexcept {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load(a + i);
        const __m256d sq = _mm256_mul_pd(x, x);
        m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double m2 = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    double r = std::sqrt(m2);
    if (i < n) r = std::max(r, scalar::max_abs(a + i, n - i));
    return r;
}

} // namespace sclat::simd::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the reference kernels and
// isa_supported(Isa::avx2) reports false, so they are never selected.
namespace sclat::simd::avx2 {
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept { scalar::mul(a, b, out, n); }
void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept {
    scalar::mul_real(a, w, out, n);
}
void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept {
    scalar::fma_scaled(acc, a, b, c, n);
}
void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept { scalar::axpy(acc, a, c, n); }
double sum_abs2(const cplx* a, std::size_t n) noexcept { return scalar::sum_abs2(a, n); }
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept {
    return scalar::weighted_sum_abs2(a, w, n);
}
double max_abs(const cplx* a, std::size_t n) noexcept { return scalar::max_abs(a, n); }
} // namespace sclat::simd::avx2

#endif
