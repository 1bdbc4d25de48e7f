#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace milnor::kernels {

// Row update dst[i] = (dst[i] + mult * src[i]) mod p. Inputs are reduced
// residues, 2^30 < p < 2^31, mult < p. This is the inner loop of modular
// elimination; an AVX2 variant is selected at runtime when available.
using AxpyFn = void (*)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                        std::uint32_t mult, std::uint32_t p);

void modp_axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                      std::uint32_t mult, std::uint32_t p);

bool cpu_has_avx2();

#if defined(__x86_64__) || defined(__i386__)
void modp_axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                    std::uint32_t mult, std::uint32_t p);
#endif

// Dispatched entry point and the name of the active variant.
extern AxpyFn modp_axpy;
std::string active_kernel();

// Force the scalar reference kernel (equivalence tests, benchmarking).
void use_scalar_kernels(bool enable);

}  // namespace milnor::kernels
