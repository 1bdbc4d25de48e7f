#include "milnor/modp.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace milnor::kernels {

void modp_axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                      std::uint32_t mult, std::uint32_t p) {
    if (mult == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(mult) * src[i]) % p);
    }
}

#if defined(__x86_64__) || defined(__i386__)

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

// Shoup multiplication: with cq = floor(mult * 2^32 / p) the value
// mult*x - floor(cq*x / 2^32) * p lies in [0, 2p), so one conditional
// subtraction finishes the reduction. All products fit because p < 2^31.
__attribute__((target("avx2"))) void modp_axpy_avx2(std::uint32_t* dst, const std::uint32_t* src,
                                                    std::size_t n, std::uint32_t mult,
                                                    std::uint32_t p) {
    if (mult == 0) return;
    const std::uint32_t cq = static_cast<std::uint32_t>((static_cast<std::uint64_t>(mult) << 32) / p);
    const __m256i vmult = _mm256_set1_epi32(static_cast<int>(mult));
    const __m256i vcq = _mm256_set1_epi32(static_cast<int>(cq));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i hi_mask = _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ull));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i prod_even = _mm256_mul_epu32(x, vcq);
        __m256i prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), vcq);
        __m256i q = _mm256_or_si256(_mm256_srli_epi64(prod_even, 32),
                                    _mm256_and_si256(prod_odd, hi_mask));
        __m256i lo = _mm256_mullo_epi32(x, vmult);
        __m256i r = _mm256_sub_epi32(lo, _mm256_mullo_epi32(q, vp));
        r = _mm256_min_epu32(r, _mm256_sub_epi32(r, vp));
        __m256i s = _mm256_add_epi32(d, r);
        s = _mm256_min_epu32(s, _mm256_sub_epi32(s, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), s);
    }
    if (i < n) modp_axpy_scalar(dst + i, src + i, n - i, mult, p);
}

#else

bool cpu_has_avx2() { return false; }

#endif

namespace {

AxpyFn resolve_axpy() {
#if defined(__x86_64__) || defined(__i386__)
    if (cpu_has_avx2()) return modp_axpy_avx2;
#endif
    return modp_axpy_scalar;
}

bool g_force_scalar = false;

}  // namespace

AxpyFn modp_axpy = resolve_axpy();

void use_scalar_kernels(bool enable) {
    g_force_scalar = enable;
    modp_axpy = enable ? modp_axpy_scalar : resolve_axpy();
}

std::string active_kernel() {
    if (modp_axpy == modp_axpy_scalar) return "scalar";
    return "avx2";
}

}  // namespace milnor::kernels
