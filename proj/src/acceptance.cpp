#include "cutproj/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "cutproj/error.hpp"

namespace cutproj {

RegularGrid::RegularGrid(double r, std::vector<std::vector<double>> cuts, double dedup_tol)
    : r_(r), dedup_tol_(dedup_tol), cuts_(std::move(cuts)) {
  const int m = dim();
  padded_.resize(m);
  strides_.assign(m, 1);
  for (int j = 0; j < m; ++j) {
    padded_[j] = cuts_[j];
    padded_[j].push_back(1.0);
  }
  // Saturating product so an oversized grid still reports its size.
  count_ = 1;
  for (int j = m - 1; j >= 0; --j) {
    strides_[j] = count_;
    const uint64_t n = cuts_[j].size();
    count_ = count_ > std::numeric_limits<uint64_t>::max() / n ? std::numeric_limits<uint64_t>::max()
                                                                : count_ * n;
  }
}

std::span<const double> RegularGrid::cuts(int j) const { return cuts_[j]; }

void RegularGrid::check(const ComponentId& id) const {
  if (static_cast<int>(id.idx.size()) != dim())
    fail(ErrorKind::BadComponent, "component id has the wrong dimension");
  for (int j = 0; j < dim(); ++j)
    if (id.idx[j] >= cuts_[j].size()) fail(ErrorKind::BadComponent, "component index out of range");
}

uint64_t RegularGrid::flat_index(const ComponentId& id) const {
  check(id);
  uint64_t f = 0;
  for (int j = 0; j < dim(); ++j) f += id.idx[j] * strides_[j];
  return f;
}

ComponentId RegularGrid::unflatten(uint64_t flat) const {
  if (flat >= count_) fail(ErrorKind::BadComponent, "flat component index out of range");
  ComponentId id{std::vector<uint32_t>(dim())};
  for (int j = 0; j < dim(); ++j) {
    id.idx[j] = static_cast<uint32_t>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return id;
}

Box RegularGrid::box(const ComponentId& id) const {
  check(id);
  Box b{RealVec(dim()), RealVec(dim())};
  for (int j = 0; j < dim(); ++j) {
    b.lo[j] = padded_[j][id.idx[j]];
    b.hi[j] = padded_[j][id.idx[j] + 1];
  }
  return b;
}

RegularGrid build_grid(const SchemeSpec& spec, double r, const GridOptions& options) {
  if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "r must be non-negative");
  const auto h = static_cast<int64_t>(std::floor(r));
  const int m = spec.codim();
  std::vector<std::vector<double>> cuts(m);
  for_each_in_cube(spec.d, h, [&](const IntVec& p) {
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < spec.d; ++i) s = s + spec.a(j, i) * static_cast<double>(p[i]);
      cuts[j].push_back(frac(s));
    }
  });
  for (auto& c : cuts) {
    for (double& x : c)
      if (x >= 1.0 - options.dedup_tol) x = 0.0;
    std::sort(c.begin(), c.end());
    std::vector<double> kept;
    kept.reserve(c.size());
    for (double x : c)
      if (kept.empty() || x - kept.back() > options.dedup_tol) kept.push_back(x);
    kept.front() = 0.0;
    c = std::move(kept);
  }
  RegularGrid grid(r, std::move(cuts), options.dedup_tol);
  if (options.component_budget != 0 && grid.component_count() > options.component_budget)
    fail(ErrorKind::TooManyComponents, std::to_string(grid.component_count()) +
                                           " components exceed the budget of " +
                                           std::to_string(options.component_budget));
  return grid;
}

ComponentId component_of(const RegularGrid& grid, std::span<const double> w) {
  if (static_cast<int>(w.size()) != grid.dim())
    fail(ErrorKind::InvalidArgument, "window point has the wrong dimension");
  ComponentId id{std::vector<uint32_t>(grid.dim())};
  for (int j = 0; j < grid.dim(); ++j) {
    auto c = grid.padded_cuts(j);
    const double x = w[j];
    if (!(x >= 0.0 && x < 1.0)) fail(ErrorKind::InvalidArgument, "window point outside [0,1)");
    auto it = std::upper_bound(c.begin(), c.end() - 1, x);
    const std::size_t i = static_cast<std::size_t>(it - c.begin()) - 1;
    if (x - c[i] < grid.dedup_tol() || c[i + 1] - x < grid.dedup_tol())
      fail(ErrorKind::SingularPoint, "window coordinate " + std::to_string(j) + " lies on a cut");
    id.idx[j] = static_cast<uint32_t>(i);
  }
  return id;
}

double frequency(const RegularGrid& grid, const ComponentId& id) { return grid.box(id).volume(); }

double min_side(const RegularGrid& grid) {
  double best = 1.0;
  for (int j = 0; j < grid.dim(); ++j) {
    auto c = grid.padded_cuts(j);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) best = std::min(best, c[i + 1] - c[i]);
  }
  return best;
}

double max_side(const RegularGrid& grid) {
  double best = 0.0;
  for (int j = 0; j < grid.dim(); ++j) {
    auto c = grid.padded_cuts(j);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) best = std::max(best, c[i + 1] - c[i]);
  }
  return best;
}

void write_grid_csv(std::ostream& os, const RegularGrid& grid) {
  const auto old = os.precision(17);
  for (int j = 0; j < grid.dim(); ++j) {
    os << "cuts," << j;
    for (double c : grid.cuts(j)) os << ',' << c;
    os << '\n';
  }
  os << "summary,components," << grid.component_count() << ",min_side," << min_side(grid)
     << ",max_side," << max_side(grid) << '\n';
  os.precision(old);
}

}  // namespace cutproj
