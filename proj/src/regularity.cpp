#include "cutproj/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "cutproj/diophantine.hpp"
#include "cutproj/error.hpp"

namespace cutproj {

namespace {

// Interval index of x among padded cuts, or -1 when x is within `erode` of
// either end of its interval.
int64_t locate_eroded(std::span<const double> c, double x, double erode) {
  auto it = std::upper_bound(c.begin(), c.end() - 1, x);
  const auto i = static_cast<int64_t>(it - c.begin()) - 1;
  // A single cut leaves the whole circle as one component: nothing to erode.
  if (c.size() == 2) return 0;
  if (erode > 0.0 && (x - c[i] < erode || c[i + 1] - x < erode)) return -1;
  return i;
}

// Least N such that the orbit start + L(n), |n| <= N, meets every component
// (eroded by `erode`).
int64_t cover_radius(const SchemeSpec& spec, const RegularGrid& grid, const RealVec& start, double erode,
                     int64_t cap, std::vector<uint8_t>& seen) {
  const int m = grid.dim();
  std::fill(seen.begin(), seen.end(), 0);
  uint64_t left = grid.component_count();
  for (int64_t h = 0; h <= cap; ++h) {
    for_each_in_shell(spec.d, h, [&](const IntVec& n) {
      if (left == 0) return;
      uint64_t flat = 0;
      for (int j = 0; j < m; ++j) {
        double s = start[j];
        for (int i = 0; i < spec.d; ++i) s = s + spec.a(j, i) * static_cast<double>(n[i]);
        const int64_t idx = locate_eroded(grid.padded_cuts(j), frac(s), erode);
        if (idx < 0) return;
        flat += static_cast<uint64_t>(idx) * grid.stride(j);
      }
      if (!seen[flat]) {
        seen[flat] = 1;
        --left;
      }
    });
    if (left == 0) return h;
  }
  fail(ErrorKind::BudgetExceeded, "orbit radius cap reached before every component was visited");
}

}  // namespace

RepetitivityEstimate repetitivity(const SchemeSpec& spec, double r, const RepetitivityOptions& options) {
  if (options.density < 1) fail(ErrorKind::InvalidArgument, "density must be positive");
  RegularGrid grid = build_grid(spec, r, options.grid);
  const int m = grid.dim();
  const double g = static_cast<double>(options.density);
  const double erode = 0.5 / g;
  RepetitivityEstimate est;
  est.density = options.density;
  bool upper_ok = 2.0 * erode < min_side(grid);
  int64_t upper = 0;
  std::vector<uint8_t> seen(grid.component_count());
  IntVec lo(m, 0), hi(m, options.density - 1);
  RealVec start(m);
  for_each_in_box(lo, hi, [&](const IntVec& cell) {
    for (int j = 0; j < m; ++j) start[j] = (static_cast<double>(cell[j]) + 0.5) / g;
    est.lower = std::max(est.lower, cover_radius(spec, grid, start, 0.0, options.cap, seen));
    if (upper_ok) upper = std::max(upper, cover_radius(spec, grid, start, erode, options.cap, seen));
  });
  if (upper_ok) est.upper = upper;
  return est;
}

RepulsivityResult repulsivity(const SchemeSpec& spec, double r, int64_t n_scan, const GridOptions& grid_options) {
  if (n_scan < 1) fail(ErrorKind::InvalidArgument, "scan radius must be positive");
  RegularGrid grid = build_grid(spec, r, grid_options);
  const ChartMap chart(spec);
  struct Pt {
    RealVec u;
    IntVec p;
  };
  std::unordered_map<uint64_t, std::vector<Pt>> bins;
  for_each_in_cube(spec.d, n_scan, [&](const IntVec& p) {
    const uint64_t f = grid.flat_index(component_of(grid, window_coord(spec, p)));
    LatticeVector m = lift(spec, p);
    bins[f].push_back({chart(m), p});
  });
  RepulsivityResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (auto& [flat, pts] : bins) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.u[0] < b.u[0]; });
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size() && pts[j].u[0] - pts[i].u[0] < best.value; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < pts[i].u.size(); ++l) {
          const double dx = pts[j].u[l] - pts[i].u[l];
          s += dx * dx;
        }
        const double dist = std::sqrt(s);
        if (dist < best.value || (dist == best.value && pts[i].p < best.p)) {
          best.value = dist;
          best.p = pts[i].p;
          best.p2 = pts[j].p;
        }
      }
  }
  if (!std::isfinite(best.value)) fail(ErrorKind::NoRecurrence, "no patch recurs inside the scan window");
  return best;
}

int64_t repulsivity_cf_prediction(const SchemeSpec& spec, double r, const GridOptions& grid_options) {
  if (spec.d != 1 || spec.k != 2 || spec.has_internal_map())
    fail(ErrorKind::InvalidArgument, "the continued fraction prediction needs d = 1, k = 2, M = 0");
  const double gap = max_side(build_grid(spec, r, grid_options));
  const double x = frac(spec.alpha[0]);
  for (const auto& c : continued_fraction(x, 90).convergents) {
    if (c.q < 1) continue;
    if (dist_to_int(x * static_cast<double>(c.q)) < gap) return c.q;
  }
  fail(ErrorKind::NoRecurrence, "no convergent denominator closes the widest gap");
}

void write_curve_csv(std::ostream& os, const RegularityCurve& curve, bool header) {
  const auto old = os.precision(17);
  if (header) os << "r,value,method,parameters\n";
  for (const auto& s : curve.samples) os << s.r << ',' << s.value << ',' << curve.method << ',' << curve.parameters << '\n';
  os.precision(old);
}

}  // namespace cutproj
