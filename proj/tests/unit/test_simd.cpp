#include <doctest.h>

#include <cstring>
#include <vector>

#include "cutproj/geometry.hpp"
#include "cutproj/scheme.hpp"
#include "cutproj/simd/kernels.hpp"

using namespace cutproj;
namespace k = cutproj::simd;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Variant {
  k::Isa isa;
  void (*frac_affine)(double, double, int64_t, std::span<double>);
  std::size_t (*locate)(std::span<const double>, std::span<const double>, std::span<uint32_t>, double);
  void (*max_dist)(std::span<const double>, std::span<double>);
};

std::vector<Variant> vector_variants() {
  std::vector<Variant> v;
#if defined(CUTPROJ_HAVE_AVX2)
  if (k::isa_available(k::Isa::Avx2)) v.push_back({k::Isa::Avx2, k::avx2::frac_affine, k::avx2::locate, k::avx2::max_dist_to_int});
#endif
#if defined(CUTPROJ_HAVE_NEON)
  v.push_back({k::Isa::Neon, k::neon::frac_affine, k::neon::locate, k::neon::max_dist_to_int});
#endif
  return v;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar frac_affine matches window_coord") {
  auto s = random_scheme(1, 2, 3);
  std::vector<double> out(101);
  k::scalar::frac_affine(s.t[0], s.alpha[0], -50, out);
  for (int i = 0; i < 101; ++i) CHECK(out[i] == window_coord(s, IntVec{i - 50})[0]);
}

TEST_CASE("vector kernels are bitwise equal to scalar") {
  MESSAGE("detected ISA: " << std::string(k::isa_name(k::detected_isa())));
  UniformStream rng(5);
  for (const auto& var : vector_variants()) {
    for (int trial = 0; trial < 200; ++trial) {
      const double base = rng.next() * 10 - 5, step = rng.next() * 2 - 1;
      const int64_t first = static_cast<int64_t>(rng.next() * 2e6) - 1000000;
      const std::size_t len = 1 + static_cast<std::size_t>(rng.next() * 37);
      std::vector<double> a(len), b(len);
      k::scalar::frac_affine(base, step, first, a);
      var.frac_affine(base, step, first, b);
      CHECK(same_bits(a, b));

      std::vector<double> cuts{0.0};
      const int nc = static_cast<int>(rng.next() * 40);
      for (int i = 0; i < nc; ++i) cuts.push_back(rng.next());
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      cuts.push_back(1.0);
      // Exercise exact cut hits as well.
      for (std::size_t i = 0; i < len; i += 5) a[i] = cuts[i % (cuts.size() - 1)];
      std::vector<uint32_t> ia(len), ib(len);
      const auto fa = k::scalar::locate(cuts, a, ia, 1e-12);
      const auto fb = var.locate(cuts, a, ib, 1e-12);
      CHECK(ia == ib);
      CHECK(fa == fb);

      std::vector<double> acc_a(len, 0.1), acc_b(len, 0.1);
      k::scalar::max_dist_to_int(a, acc_a);
      var.max_dist(a, acc_b);
      CHECK(same_bits(acc_a, acc_b));
    }
  }
}

TEST_CASE("locate semantics") {
  std::vector<double> cuts{0.0, 0.25, 0.5, 1.0};
  std::vector<double> x{0.0, 0.1, 0.25, 0.49, 0.5, 0.999};
  std::vector<uint32_t> idx(x.size());
  const auto flagged = k::locate(cuts, x, idx, 1e-12);
  CHECK(idx == std::vector<uint32_t>{0, 0, 1, 1, 2, 2});
  CHECK(flagged == 3);
}

TEST_CASE("dispatch can be forced to scalar") {
  const auto before = k::active_isa();
  CHECK(k::set_active_isa(k::Isa::Scalar));
  CHECK(k::active_isa() == k::Isa::Scalar);
  std::vector<double> out(8);
  k::frac_affine(0.25, 0.5, 0, out);
  CHECK(out[1] == 0.75);
  CHECK(out[2] == 0.25);
  k::set_active_isa(before);
}

}  // TEST_SUITE
