#include "cutproj/geometry.hpp"
#include "cutproj/simd/kernels.hpp"

namespace cutproj::simd::scalar {

void frac_affine(double base, double step, int64_t first, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    double x = base + static_cast<double>(first + static_cast<int64_t>(i)) * step;
    out[i] = frac(x);
  }
}

std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol) {
  const std::size_t n = padded_cuts.size() - 1;
  const double* c = padded_cuts.data();
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
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
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = dist_to_int(x[i]);
    acc[i] = acc[i] < d ? d : acc[i];
  }
}

}  // namespace cutproj::simd::scalar
