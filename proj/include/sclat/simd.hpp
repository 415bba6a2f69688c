#pragma once

#include <complex>
#include <cstddef>

/// Elementwise complex kernels used on the hot paths of the library.
///
/// Every kernel has a scalar reference implementation and, on x86-64, an
/// AVX2/FMA variant. The variant is chosen once at runtime from the CPU
/// feature bits; `SCLAT_ISA=scalar` in the environment or `force_isa`
/// pins the reference path. Reductions in the vector path use a different
/// summation order, so results agree with the scalar path to roundoff only.
namespace sclat::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Name of an instruction set ("scalar", "avx2").
const char* isa_name(Isa isa) noexcept;
/// True when the running CPU and the build both support `isa`.
bool isa_supported(Isa isa) noexcept;
/// Instruction set currently used by the dispatching entry points.
Isa active_isa() noexcept;
/// Pin the dispatch target; returns false (and changes nothing) if unsupported.
bool force_isa(Isa isa) noexcept;

/// out[i] = a[i] * b[i]; `out` may alias `a` or `b`.
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
/// out[i] = a[i] * w[i] with real weights; `out` may alias `a`.
void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept;
/// acc[i] += c * a[i] * b[i].
void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept;
/// acc[i] += c * a[i].
void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept;
/// Σ |a[i]|².
double sum_abs2(const cplx* a, std::size_t n) noexcept;
/// Σ w[i] |a[i]|².
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept;
/// max |a[i]| (0 for n = 0).
double max_abs(const cplx* a, std::size_t n) noexcept;

namespace scalar {
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept;
void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept;
void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept;
double sum_abs2(const cplx* a, std::size_t n) noexcept;
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept;
double max_abs(const cplx* a, std::size_t n) noexcept;
} // namespace scalar

namespace avx2 {
// Only callable when isa_supported(Isa::avx2).
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept;
void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept;
void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept;
double sum_abs2(const cplx* a, std::size_t n) noexcept;
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept;
double max_abs(const cplx* a, std::size_t n) noexcept;
} // namespace avx2

} // namespace sclat::simd
