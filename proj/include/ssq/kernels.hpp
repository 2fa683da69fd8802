#pragma once

// Dense row kernels for prime-field elimination. Each kernel has a scalar reference
// and an AVX2 variant; the unsuffixed entry points dispatch at runtime.

#include <cstddef>
#include <cstdint>

namespace ssq::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_available();
/** Currently selected variant. Defaults to the best one the CPU supports. */
Isa active_isa();
/** Forces a variant (tests). Requesting Avx2 on a CPU without it keeps Scalar. */
void force_isa(Isa isa);

// dst[i] = (dst[i] + c * src[i]) mod p, entries in [0, p).
void axpy_mod_p_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);
void axpy_mod_p_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);
void axpy_mod_p(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);

// dst[i] ^= src[i]
void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);

}  // namespace ssq::kernels
