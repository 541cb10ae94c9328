#pragma once

// Independent reference computations for the test suites. Each one is a
// deliberately naive restatement of a definition (long double arithmetic,
// exhaustive loops, exact integer recurrences) and shares no code path with
// the library beyond the SchemeSpec container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "cutproj/scheme.hpp"

namespace oracle {

using cutproj::IntVec;
using cutproj::RealVec;
using cutproj::SchemeSpec;

inline long double form_ld(const SchemeSpec& s, int j, const IntVec& p, bool with_t) {
  long double x = with_t ? s.t[j] : 0.0L;
  for (int i = 0; i < s.d; ++i) x += static_cast<long double>(s.alpha[j * s.d + i]) * p[i];
  return x;
}

inline long double frac_ld(long double x) { return x - std::floor(x); }

/// Lexicographic odometer over [-h, h]^d.
template <class F>
void cube(int d, int64_t h, F&& f) {
  IntVec p(d, -h);
  while (true) {
    f(p);
    int i = d - 1;
    while (i >= 0 && p[i] == h) p[i--] = -h;
    if (i < 0) return;
    ++p[i];
  }
}

/// Cut points of coordinate j, merged at `tol`, with values near 1 folded to 0.
inline std::vector<double> cuts(const SchemeSpec& s, int j, int64_t r, double tol = 1e-10) {
  std::vector<long double> raw;
  cube(s.d, r, [&](const IntVec& p) {
    long double f = frac_ld(form_ld(s, j, p, false));
    if (f > 1.0L - tol) f = 0.0L;
    raw.push_back(f);
  });
  std::sort(raw.begin(), raw.end());
  std::vector<double> out;
  for (long double x : raw)
    if (out.empty() || static_cast<double>(x) - out.back() > tol) out.push_back(static_cast<double>(x));
  return out;
}

/// floor(t + L(p + n)) - floor(t + L(p)) for all |n| <= r, in odometer order.
inline std::vector<IntVec> staircase(const SchemeSpec& s, const IntVec& p, int64_t r) {
  const int c = s.k - s.d;
  IntVec q0(c);
  for (int j = 0; j < c; ++j) q0[j] = static_cast<int64_t>(std::floor(form_ld(s, j, p, true)));
  std::vector<IntVec> out;
  cube(s.d, r, [&](const IntVec& n) {
    IntVec y(s.d), dq(c);
    for (int i = 0; i < s.d; ++i) y[i] = p[i] + n[i];
    for (int j = 0; j < c; ++j) dq[j] = static_cast<int64_t>(std::floor(form_ld(s, j, y, true))) - q0[j];
    out.push_back(dq);
  });
  return out;
}

/// Continued fraction of num/den by the Euclidean algorithm.
inline std::vector<int64_t> cf_rational(int64_t num, int64_t den) {
  std::vector<int64_t> a;
  while (den != 0) {
    int64_t q = num / den, r = num % den;
    if (r < 0) {
      --q;
      r += den;
    }
    a.push_back(q);
    num = den;
    den = r;
  }
  return a;
}

/// Direct |sum_{n in [-N,N]^d} e(<theta, n>)|.
inline double exp_sum_direct(const RealVec& theta, int64_t N) {
  std::complex<long double> s = 0;
  cube(static_cast<int>(theta.size()), N, [&](const IntVec& n) {
    long double ph = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) ph += static_cast<long double>(theta[i]) * n[i];
    ph = 2 * std::numbers::pi_v<long double> * (ph - std::floor(ph));
    s += std::complex<long double>(std::cos(ph), std::sin(ph));
  });
  return static_cast<double>(std::abs(s));
}

/// Number of distinct values up to tol.
inline std::size_t distinct(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i == 0 || v[i] - v[i - 1] > tol) ++n;
  return n;
}

struct Cell {
  RealVec lo, hi;
};

/// Volume of base minus holes by midpoints of the absolute grid of cells of
/// side 2^-bits. Exact when every coordinate is a multiple of 2^-bits.
inline double raster_volume(const Cell& base, const std::vector<Cell>& holes, int bits) {
  const int m = static_cast<int>(base.lo.size());
  const double h = std::ldexp(1.0, -bits);
  IntVec lo(m), hi(m), idx(m);
  for (int i = 0; i < m; ++i) {
    lo[i] = static_cast<int64_t>(std::floor(base.lo[i] / h));
    hi[i] = static_cast<int64_t>(std::ceil(base.hi[i] / h)) - 1;
    if (hi[i] < lo[i]) return 0.0;
  }
  idx = lo;
  RealVec x(m);
  int64_t count = 0;
  while (true) {
    for (int i = 0; i < m; ++i) x[i] = (static_cast<double>(idx[i]) + 0.5) * h;
    auto inside = [&](const RealVec& a, const RealVec& b) {
      for (int i = 0; i < m; ++i)
        if (!(x[i] >= a[i] && x[i] < b[i])) return false;
      return true;
    };
    bool keep = inside(base.lo, base.hi);
    for (const auto& c : holes) keep = keep && !inside(c.lo, c.hi);
    count += keep;
    int i = m - 1;
    while (i >= 0 && idx[i] == hi[i]) {
      idx[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++idx[i];
  }
  return static_cast<double>(count) * std::pow(h, m);
}

}  // namespace oracle
