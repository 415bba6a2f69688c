#include "sclat/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace sclat::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(SCLAT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() noexcept {
    if (const char* env = std::getenv("SCLAT_ISA"); env && std::strcmp(env, "scalar") == 0)
        return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

bool use_avx2() noexcept { return current().load(std::memory_order_relaxed) == Isa::avx2; }

} // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
    if (!isa_supported(isa)) return false;
    current().store(isa, std::memory_order_relaxed);
    return true;
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    use_avx2() ? avx2::mul(a, b, out, n) : scalar::mul(a, b, out, n);
}
void mul_real(const cplx* a, const double* w, cplx* out, std::size_t n) noexcept {
    use_avx2() ? avx2::mul_real(a, w, out, n) : scalar::mul_real(a, w, out, n);
}
void fma_scaled(cplx* acc, const cplx* a, const cplx* b, cplx c, std::size_t n) noexcept {
    use_avx2() ? avx2::fma_scaled(acc, a, b, c, n) : scalar::fma_scaled(acc, a, b, c, n);
}
void axpy(cplx* acc, const cplx* a, cplx c, std::size_t n) noexcept {
    use_avx2() ? avx2::axpy(acc, a, c, n) : scalar::axpy(acc, a, c, n);
}
double sum_abs2(const cplx* a, std::size_t n) noexcept {
    return use_avx2() ? avx2::sum_abs2(a, n) : scalar::sum_abs2(a, n);
}
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) noexcept {
    return use_avx2() ? avx2::weighted_sum_abs2(a, w, n) : scalar::weighted_sum_abs2(a, w, n);
}
double max_abs(const cplx* a, std::size_t n) noexcept {
    return use_avx2() ? avx2::max_abs(a, n) : scalar::max_abs(a, n);
}

} // namespace sclat::simd
