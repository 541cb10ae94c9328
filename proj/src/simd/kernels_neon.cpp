#include <arm_neon.h>

#include "cutproj/simd/kernels.hpp"

namespace cutproj::simd::neon {

namespace {

inline float64x2_t frac2(float64x2_t x) {
  float64x2_t f = vsubq_f64(x, vrndmq_f64(x));
  uint64x2_t ge1 = vcgeq_f64(f, vdupq_n_f64(1.0));
  return vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(f), ge1));
}

}  // namespace

void frac_affine(double base, double step, int64_t first, std::span<double> out) {
  const std::size_t n = out.size();
  const float64x2_t vbase = vdupq_n_f64(base);
  const float64x2_t vstep = vdupq_n_f64(step);
  const double f0 = static_cast<double>(first);
  const double init[2] = {f0, f0 + 1.0};
  float64x2_t lane = vld1q_f64(init);
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // vmulq + vaddq, never vfmaq: results must match the scalar path.
    float64x2_t x = vaddq_f64(vbase, vmulq_f64(lane, vstep));
    vst1q_f64(out.data() + i, frac2(x));
    lane = vaddq_f64(lane, two);
  }
  for (; i < n; ++i) {
    double x = base + static_cast<double>(first + static_cast<int64_t>(i)) * step;
    double f = x - __builtin_floor(x);
    out[i] = f >= 1.0 ? 0.0 : f;
  }
}

std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol) {
  // No gather on NEON; two interleaved scalar searches keep both lanes busy.
  const std::size_t n = padded_cuts.size() - 1;
  const double* c = padded_cuts.data();
  std::size_t flagged = 0;
  std::size_t i = 0;
  for (; i + 2 <= x.size(); i += 2) {
    const double v0 = x[i], v1 = x[i + 1];
    std::size_t lo0 = 0, lo1 = 0, len = n;
    while (len > 1) {
      std::size_t half = len / 2;
      lo0 = c[lo0 + half] <= v0 ? lo0 + half : lo0;
      lo1 = c[lo1 + half] <= v1 ? lo1 + half : lo1;
      len -= half;
    }
    idx[i] = static_cast<uint32_t>(lo0);
    idx[i + 1] = static_cast<uint32_t>(lo1);
    if (v0 - c[lo0] < tol || c[lo0 + 1] - v0 < tol) ++flagged;
    if (v1 - c[lo1] < tol || c[lo1 + 1] - v1 < tol) ++flagged;
  }
  for (; i < x.size(); ++i) {
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
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t onev = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(x.data() + i);
    float64x2_t f = vsubq_f64(v, vrndmq_f64(v));
    float64x2_t d = vbslq_f64(vcltq_f64(f, half), f, vsubq_f64(onev, f));
    float64x2_t a = vld1q_f64(acc.data() + i);
    vst1q_f64(acc.data() + i, vbslq_f64(vcltq_f64(a, d), d, a));
  }
  for (; i < n; ++i) {
    double f = x[i] - __builtin_floor(x[i]);
    double d = f < 0.5 ? f : 1.0 - f;
    acc[i] = acc[i] < d ? d : acc[i];
  }
}

}  // namespace cutproj::simd::neon
