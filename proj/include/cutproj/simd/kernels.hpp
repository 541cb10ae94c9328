#pragma once

// Inner loops of the orbit sweeps. Every kernel has a scalar reference
// implementation; vector variants must agree with it bit for bit (the
// arithmetic is plain IEEE mul/add/floor, compiled without contraction).

#include <cstddef>
#include <cstdint>
#include <span>

namespace cutproj::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa) noexcept;

/// Best ISA supported by this CPU and build. The environment variable
/// CUTPROJ_SIMD=scalar forces the reference path.
Isa detected_isa() noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Overrides the dispatch target; returns false if `isa` is unavailable.
bool set_active_isa(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

/// out[i] = frac(base + double(first + i) * step), folded into [0,1).
void frac_affine(double base, double step, int64_t first, std::span<double> out);

/// For each x[i] in [0,1): idx[i] = (number of cuts <= x[i]) - 1, searching the
/// first n = padded_cuts.size() - 1 entries; padded_cuts must be sorted, start
/// at 0 and end with the sentinel 1.0. Returns the number of lanes within
/// `tol` of either end of their interval.
std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol);

/// acc[i] = max(acc[i], ||x[i]||), the distance to the nearest integer.
void max_dist_to_int(std::span<const double> x, std::span<double> acc);

namespace scalar {
void frac_affine(double base, double step, int64_t first, std::span<double> out);
std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol);
void max_dist_to_int(std::span<const double> x, std::span<double> acc);
}  // namespace scalar

#if defined(CUTPROJ_HAVE_AVX2)
namespace avx2 {
void frac_affine(double base, double step, int64_t first, std::span<double> out);
std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol);
void max_dist_to_int(std::span<const double> x, std::span<double> acc);
}  // namespace avx2
#endif

#if defined(CUTPROJ_HAVE_NEON)
namespace neon {
void frac_affine(double base, double step, int64_t first, std::span<double> out);
std::size_t locate(std::span<const double> padded_cuts, std::span<const double> x,
                   std::span<uint32_t> idx, double tol);
void max_dist_to_int(std::span<const double> x, std::span<double> acc);
}  // namespace neon
#endif

}  // namespace cutproj::simd
