#include <atomic>
#include <cstdlib>
#include <cstring>

#include "cutproj/simd/kernels.hpp"

namespace cutproj::simd {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("CUTPROJ_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Isa::Scalar;
#if defined(CUTPROJ_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
#if defined(CUTPROJ_HAVE_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

Isa detected_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CUTPROJ_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(CUTPROJ_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
  if (!isa_available(isa)) return false;
  active().store(isa, std::memory_order_relaxed);
  return true;
}

void frac_affine(double base, double step, int64_t first, std::span<double> out) {
  switch (active_isa()) {
#if defined(CUTPROJ_HAVE_AVX2)
    case Isa::Avx2: return avx2::frac_affine(base, step, first, out);
#endif
#if defined(CUTPROJ_HAVE_NEON)
    case Isa::Neon: return neon::frac_affine(base, step, first, out);
#endif
    default: return scalar::frac_affine(base, step, first, out);
  }
}

std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol) {
  switch (active_isa()) {
#if defined(CUTPROJ_HAVE_AVX2)
    case Isa::Avx2: return avx2::locate(padded_cuts, x, idx, tol);
#endif
#if defined(CUTPROJ_HAVE_NEON)
    case Isa::Neon: return neon::locate(padded_cuts, x, idx, tol);
#endif
    default: return scalar::locate(padded_cuts, x, idx, tol);
  }
}

void max_dist_to_int(std::span<const double> x, std::span<double> acc) {
  switch (active_isa()) {
#if defined(CUTPROJ_HAVE_AVX2)
    case Isa::Avx2: return avx2::max_dist_to_int(x, acc);
#endif
#if defined(CUTPROJ_HAVE_NEON)
    case Isa::Neon: return neon::max_dist_to_int(x, acc);
#endif
    default: return scalar::max_dist_to_int(x, acc);
  }
}

}  // namespace cutproj::simd
