#include <immintrin.h>

#include "cutproj/simd/kernels.hpp"

namespace cutproj::simd::avx2 {

namespace {

inline __m256d frac4(__m256d x) {
  __m256d f = _mm256_sub_pd(x, _mm256_floor_pd(x));
  __m256d ge1 = _mm256_cmp_pd(f, _mm256_set1_pd(1.0), _CMP_GE_OQ);
  return _mm256_andnot_pd(ge1, f);
}

}  // namespace

void frac_affine(double base, double step, int64_t first, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  const __m256d vbase = _mm256_set1_pd(base);
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d four = _mm256_set1_pd(4.0);
  // Integer-valued doubles below 2^53 are exact, so lane + 4 stays exact.
  const double f0 = static_cast<double>(first);
  __m256d lane = _mm256_set_pd(f0 + 3.0, f0 + 2.0, f0 + 1.0, f0);
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_add_pd(vbase, _mm256_mul_pd(lane, vstep));
    _mm256_storeu_pd(out.data() + i, frac4(x));
    lane = _mm256_add_pd(lane, four);
  }
  for (; i < n; ++i) {
    double x = base + static_cast<double>(first + static_cast<int64_t>(i)) * step;
    double f = x - __builtin_floor(x);
    out[i] = f >= 1.0 ? 0.0 : f;
  }
}

std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol) {
  const std::size_t n = padded_cuts.size() - 1;
  const double* c = padded_cuts.data();
  const std::size_t m = x.size();
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t flagged = 0;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    __m256i lo = _mm256_setzero_si256();
    std::size_t len = n;
    while (len > 1) {
      const std::size_t half = len / 2;
      const __m256i vhalf = _mm256_set1_epi64x(static_cast<long long>(half));
      const __m256i probe = _mm256_add_epi64(lo, vhalf);
      const __m256d cv = _mm256_i64gather_pd(c, probe, 8);
      const __m256i le = _mm256_castpd_si256(_mm256_cmp_pd(cv, v, _CMP_LE_OQ));
      lo = _mm256_add_epi64(lo, _mm256_and_si256(vhalf, le));
      len -= half;
    }
    alignas(32) long long lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), lo);
    for (int l = 0; l < 4; ++l) idx[i + l] = static_cast<uint32_t>(lanes[l]);
    const __m256d c0 = _mm256_i64gather_pd(c, lo, 8);
    const __m256d c1 = _mm256_i64gather_pd(c, _mm256_add_epi64(lo, one), 8);
    const __m256d near0 = _mm256_cmp_pd(_mm256_sub_pd(v, c0), vtol, _CMP_LT_OQ);
    const __m256d near1 = _mm256_cmp_pd(_mm256_sub_pd(c1, v), vtol, _CMP_LT_OQ);
    flagged += static_cast<std::size_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_or_pd(near0, near1)))));
  }
  for (; i < m; ++i) {
    const double v = x[i];
    std::size_t lo = 0, len = n;
    while (len > 1) {
      std::size_t half = len / 2;
      lo = c[lo + half] <= v ? lo + half : lo;
      len -= half;
    }
    idx[i] = static_cast<uint32_t>(lo);
    if (v - c[lo] < tol || c[lo + 1] - v < tol) ++flagged;
  }
  return flagged;
}

void max_dist_to_int(std::span<const double> x, std::span<double> acc) {
  const std::size_t n = x.size();
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d onev = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x.data() + i);
    __m256d f = _mm256_sub_pd(v, _mm256_floor_pd(v));
    __m256d lt = _mm256_cmp_pd(f, half, _CMP_LT_OQ);
    __m256d d = _mm256_blendv_pd(_mm256_sub_pd(onev, f), f, lt);
    __m256d a = _mm256_loadu_pd(acc.data() + i);
    __m256d keep = _mm256_cmp_pd(a, d, _CMP_LT_OQ);
    _mm256_storeu_pd(acc.data() + i, _mm256_blendv_pd(a, d, keep));
  }
  for (; i < n; ++i) {
    double f = x[i] - __builtin_floor(x[i]);
    double d = f < 0.5 ? f : 1.0 - f;
    acc[i] = acc[i] < d ? d : acc[i];
  }
}

}  // namespace cutproj::simd::avx2
