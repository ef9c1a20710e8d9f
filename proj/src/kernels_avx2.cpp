// Compiled with -mavx2 -mfma; only reached through kernels::select after a
// runtime CPU check.

#include <immintrin.h>

#include "fia/kernels.hpp"

namespace fia::kernels::avx2 {

namespace {

// Four lanes of (x mod p) for exact integers 0 <= x < 2^53.
inline __m256d reduce(__m256d x, __m256d vp, __m256d vinv) {
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, vinv));
  __m256d r = _mm256_fnmadd_pd(q, vp, x);
  // The quotient estimate can be off by one in either direction.
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, vp));
  __m256d over = _mm256_cmp_pd(r, vp, _CMP_GE_OQ);
  r = _mm256_sub_pd(r, _mm256_and_pd(over, vp));
  return r;
}

}  // namespace

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t p) {
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vf = _mm256_set1_pd(static_cast<double>(factor));
  std::size_t i = 0;
  const std::size_t n = dst.size();
  for (; i + 4 <= n; i += 4) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src.data() + i));
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst.data() + i));
    __m256d x = _mm256_fmadd_pd(vf, _mm256_cvtepi32_pd(s), _mm256_cvtepi32_pd(d));
    __m128i out = _mm256_cvtpd_epi32(reduce(x, vp, vinv));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + i), out);
  }
  if (i < n) scalar::axpy_mod(dst.subspan(i), src.subspan(i), factor, p);
}

void scale_mod(std::span<std::uint32_t> row, std::uint32_t factor, std::uint32_t p) {
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vf = _mm256_set1_pd(static_cast<double>(factor));
  std::size_t i = 0;
  const std::size_t n = row.size();
  for (; i + 4 <= n; i += 4) {
    __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(row.data() + i));
    __m256d x = _mm256_mul_pd(vf, _mm256_cvtepi32_pd(v));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(row.data() + i), _mm256_cvtpd_epi32(reduce(x, vp, vinv)));
  }
  if (i < n) scalar::scale_mod(row.subspan(i), factor, p);
}

}  // namespace fia::kernels::avx2
