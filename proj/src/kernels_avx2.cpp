#include "netext/kernels.hpp"

#if NETEXT_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

namespace netext::kernels {
namespace {

// 4-lane partial sums combined as (l0+l2)+(l1+l3); fixed bracketing so results
// are reproducible run to run.
inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);  // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  const double a = _mm_cvtsd_f64(m);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(m, m));
  return a > b ? a : b;
}

double sum_sq_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sq_dist_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double sq_dist_i8_avx2(const double* q2, const int8_t* u, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // widen 4 int8 lattice coords to doubles
    const __m128i b = _mm_cvtsi32_si128(*reinterpret_cast<const int32_t*>(u + i));
    const __m128i w = _mm_cvtepi8_epi32(b);
    const __m256d ud = _mm256_cvtepi32_pd(w);
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(q2 + i), ud);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = q2[i] - static_cast<double>(u[i]);
    s += d * d;
  }
  return 0.25 * s;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(signmask, d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    if (d > m) m = d;
  }
  return m;
}

// Per-element Neumaier chain; lanes never interact, so this is bit-exact
// against the scalar version.
void kahan_add_avx2(double* sum, double* comp, const double* x, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(sum + i);
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d abs_s = _mm256_andnot_pd(signmask, s);
    const __m256d abs_v = _mm256_andnot_pd(signmask, v);
    const __m256d s_big = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d v_big = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    const __m256d mask = _mm256_cmp_pd(abs_s, abs_v, _CMP_GE_OQ);
    const __m256d delta = _mm256_blendv_pd(v_big, s_big, mask);
    _mm256_storeu_pd(comp + i, _mm256_add_pd(_mm256_loadu_pd(comp + i), delta));
    _mm256_storeu_pd(sum + i, t);
  }
  for (; i < n; ++i) {
    const double s = sum[i];
    const double v = x[i];
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      comp[i] += (s - t) + v;
    else
      comp[i] += (v - t) + s;
    sum[i] = t;
  }
}

}  // namespace

namespace detail {
const Ops avx2_ops = {
    sum_sq_avx2, sq_dist_avx2, sq_dist_i8_avx2, max_abs_diff_avx2, kahan_add_avx2,
};
}  // namespace detail

}  // namespace netext::kernels

#endif  // NETEXT_HAVE_AVX2
