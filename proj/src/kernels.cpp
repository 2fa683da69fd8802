#include "ssq/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SSQ_X86 1
#endif

namespace ssq::kernels {

namespace {

Isa detect() { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

Isa& current() {
  static Isa isa = detect();
  return isa;
}

}  // namespace

bool avx2_available() {
#ifdef SSQ_X86
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current(); }

void force_isa(Isa isa) { current() = (isa == Isa::Avx2 && !avx2_available()) ? Isa::Scalar : isa; }

void axpy_mod_p_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t(c) * src[i]) % p);
}

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

#ifdef SSQ_X86

// Lanes hold x = dst + c*src < 2^31 (requires p < 2^15); the quotient x/p is estimated in
// double precision and corrected by one step either way.
__attribute__((target("avx2"))) void axpy_mod_p_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c,
                                                       std::uint32_t p, std::size_t n) {
  if (p >= (1u << 15)) {
    axpy_mod_p_scalar(dst, src, c, p, n);
    return;
  }
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i zero = _mm256_setzero_si256();
  const __m256d vinv = _mm256_set1_pd(1.0 / p);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vc));
    __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(x));
    __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(x, 1));
    __m128i qlo = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(lo, vinv)));
    __m128i qhi = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(hi, vinv)));
    __m256i q = _mm256_set_m128i(qhi, qlo);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, vp));
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
    __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
    r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  axpy_mod_p_scalar(dst + i, src + i, c, p, n - i);
}

__attribute__((target("avx2"))) void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  xor_words_scalar(dst + i, src + i, n - i);
}

#else

void axpy_mod_p_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n) {
  axpy_mod_p_scalar(dst, src, c, p, n);
}
void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) { xor_words_scalar(dst, src, n); }

#endif

void axpy_mod_p(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n) {
  if (current() == Isa::Avx2) axpy_mod_p_avx2(dst, src, c, p, n);
  else axpy_mod_p_scalar(dst, src, c, p, n);
}

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  if (current() == Isa::Avx2) xor_words_avx2(dst, src, n);
  else xor_words_scalar(dst, src, n);
}

}  // namespace ssq::kernels
