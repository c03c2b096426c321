#include <immintrin.h>

#include <cmath>

#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"

#define PSBM_AVX2 __attribute__((target("avx2")))

namespace psbm::kernels::avx2 {

namespace {

PSBM_AVX2 inline __m256d pow5(__m256d x) {
  const __m256d x2 = _mm256_mul_pd(x, x);
  const __m256d x4 = _mm256_mul_pd(x2, x2);
  return _mm256_mul_pd(x4, x);
}

// Lanes holding an exact integer below 2^53 in magnitude (false for nan/inf).
PSBM_AVX2 inline __m256d exact_integer_mask(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d magnitude = _mm256_andnot_pd(sign, v);
  const __m256d small = _mm256_cmp_pd(magnitude, _mm256_set1_pd(kExactLimit), _CMP_LT_OQ);
  const __m256d truncated = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d integral = _mm256_cmp_pd(truncated, v, _CMP_EQ_OQ);
  return _mm256_and_pd(small, integral);
}

}  // namespace

PSBM_AVX2 void quintic_triple(const double* p, const double* q, const double* r,
                              double* out, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vp = _mm256_loadu_pd(p + i);
    const __m256d vq = _mm256_loadu_pd(q + i);
    const __m256d vr = _mm256_loadu_pd(r + i);
    const __m256d p5 = pow5(vp);
    const __m256d q5 = pow5(vq);
    const __m256d r5 = pow5(vr);
    const __m256d pq = _mm256_cmp_pd(vp, vq, _CMP_EQ_OQ);
    const __m256d qr = _mm256_cmp_pd(vq, vr, _CMP_EQ_OQ);
    const __m256d all_equal = _mm256_and_pd(pq, qr);
    const __m256d generic = _mm256_add_pd(_mm256_add_pd(p5, q5), r5);
    const __m256d paired = _mm256_mul_pd(two, _mm256_add_pd(p5, r5));
    __m256d result = _mm256_blendv_pd(generic, paired, pq);
    result = _mm256_blendv_pd(result, p5, all_equal);
    _mm256_storeu_pd(out + i, result);
  }
  scalar::quintic_triple(p + i, q + i, r + i, out + i, n - i);
}

PSBM_AVX2 void triangle_rhs(const double* a, const double* b, const double* c,
                            const double* d, double t, double* out, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d sum = _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)),
                                      _mm256_loadu_pd(c + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_mul_pd(vt, sum), _mm256_loadu_pd(d + i)));
  }
  scalar::triangle_rhs(a + i, b + i, c + i, d + i, t, out + i, n - i);
}

PSBM_AVX2 std::size_t strict_below(const double* values, double bound, std::uint8_t* out,
                                   std::size_t n) {
  const __m256d vbound = _mm256_set1_pd(bound);
  const __m256d vthreshold = _mm256_set1_pd(strict_threshold(bound));
  const __m256d bound_exact = is_exact_integer(bound) ? _mm256_castsi256_pd(_mm256_set1_epi64x(-1))
                                                      : _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(values + i);
    const __m256d exact = _mm256_and_pd(exact_integer_mask(v), bound_exact);
    const __m256d below_exact = _mm256_cmp_pd(v, vbound, _CMP_LT_OQ);
    const __m256d below_margin = _mm256_cmp_pd(v, vthreshold, _CMP_LT_OQ);
    const int bits = _mm256_movemask_pd(_mm256_blendv_pd(below_margin, below_exact, exact));
    for (int lane = 0; lane < 4; ++lane) {
      const std::uint8_t hit = (bits >> lane) & 1;
      out[i + static_cast<std::size_t>(lane)] = hit;
      count += hit;
    }
  }
  return count + scalar::strict_below(values + i, bound, out + i, n - i);
}

}  // namespace psbm::kernels::avx2
