#include "sclat/simd.hpp"

#include <algorithm>
#include <cmath>

namespace sclat::simd::scalar {

// Complex products are written out so the compiler cannot route them through
// the NaN-checking library multiply.

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(a[i].real() * w[i], a[i].imag() * w[i]);
}

void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept {
    const double cr = c.real(), ci = c.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        const double pr = ar * br - ai * bi;
        const double pi = ar * bi + ai * br;
        acc[i] += cplx(cr * pr - ci * pi, cr * pi + ci * pr);
    }
}

void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept {
    const double cr = c.real(), ci = c.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        acc[i] += cplx(cr * ar - ci * ai, cr * ai + ci * ar);
    }
}

double sum_abs2(const cplx* a, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

double max_abs(const cplx* a, std::size_t n) noexcept {
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        m2 = std::max(m2, a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return std::sqrt(m2);
}

} // namespace sclat::simd::scalar
