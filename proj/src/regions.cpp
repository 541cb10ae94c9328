#include "cutproj/regions.hpp"

#include <algorithm>
#include <cmath>

#include "cutproj/error.hpp"

namespace cutproj {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

struct Builder {
  int d;
  DyadicDecomposition out;

  void emit(std::vector<DyadicCube>& list, const IntVec& corner, int level) {
    list.push_back({corner, level});
    ++out.counts_by_level[level];
  }

  // Children in for_each_in_box order; cells are partitioned among them.
  template <class F>
  void split(const IntVec& corner, int level, std::vector<IntVec>&& cells, F&& f) {
    const int64_t half = int64_t{1} << (level - 1);
    const std::size_t nchild = std::size_t{1} << d;
    std::vector<std::vector<IntVec>> parts(nchild);
    for (auto& c : cells) {
      std::size_t slot = 0;
      for (int i = 0; i < d; ++i) slot = slot * 2 + (c[i] >= corner[i] + half ? 1 : 0);
      parts[slot].push_back(std::move(c));
    }
    for (std::size_t s = 0; s < nchild; ++s) {
      IntVec child = corner;
      for (int i = 0; i < d; ++i)
        if ((s >> (d - 1 - i)) & 1) child[i] += half;
      f(child, level - 1, std::move(parts[s]));
    }
  }

  double volume(int level) const { return std::ldexp(1.0, level * d); }

  void negatives(const IntVec& corner, int level, std::vector<IntVec>&& present) {
    if (present.empty()) {
      emit(out.negative, corner, level);
      return;
    }
    if (static_cast<double>(present.size()) == volume(level)) return;
    split(corner, level, std::move(present),
          [&](const IntVec& c, int l, std::vector<IntVec>&& p) { negatives(c, l, std::move(p)); });
  }

  void node(const IntVec& corner, int level, std::vector<IntVec>&& cells) {
    if (cells.empty()) return;
    if (2.0 * static_cast<double>(cells.size()) >= volume(level)) {
      emit(out.positive, corner, level);
      negatives(corner, level, std::move(cells));
      return;
    }
    split(corner, level, std::move(cells),
          [&](const IntVec& c, int l, std::vector<IntVec>&& p) { node(c, l, std::move(p)); });
  }
};

template <class F>
void for_each_in_dyadic(const DyadicCube& q, F&& f) {
  const int64_t side = int64_t{1} << q.level;
  IntVec hi = q.corner;
  for (auto& x : hi) x += side - 1;
  for_each_in_box(q.corner, hi, f);
}

}  // namespace

CubeComplex::CubeComplex(int d, std::vector<IntVec> cells) : d_(d), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (static_cast<int>(c.size()) != d_) fail(ErrorKind::InvalidArgument, "cell dimension differs from d");
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool CubeComplex::contains(std::span<const int64_t> n) const {
  return std::binary_search(cells_.begin(), cells_.end(), n,
                            [](const auto& a, const auto& b) {
                              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                            });
}

uint64_t CubeComplex::boundary_faces() const {
  uint64_t faces = 0;
  IntVec nb;
  for (const auto& c : cells_) {
    nb = c;
    for (int i = 0; i < d_; ++i)
      for (int64_t s : {-1, 1}) {
        nb[i] = c[i] + s;
        if (!contains(nb)) ++faces;
        nb[i] = c[i];
      }
  }
  return faces;
}

CubeComplex cover_region(const ConvexBody& body, double scale) {
  try {
    body.validate_bounded();
  } catch (const Error& e) {
    fail(ErrorKind::UnboundedRegion, e.what());
  }
  if (!std::isfinite(scale) || !(scale > 0.0)) fail(ErrorKind::UnboundedRegion, "scale must be finite and positive");
  Box bb = body.bounding_box(scale);
  IntVec lo(body.dim()), hi(body.dim());
  for (int i = 0; i < body.dim(); ++i) {
    lo[i] = static_cast<int64_t>(std::floor(bb.lo[i]));
    hi[i] = static_cast<int64_t>(std::ceil(bb.hi[i]));
  }
  return cover_region(lo, hi, [&](std::span<const int64_t> n) {
    RealVec x(n.begin(), n.end());
    return body.contains(x, scale);
  });
}

CubeComplex cover_region(std::span<const int64_t> lo, std::span<const int64_t> hi,
                         const std::function<bool(std::span<const int64_t>)>& inside) {
  std::vector<IntVec> cells;
  for_each_in_box(lo, hi, [&](const IntVec& n) {
    if (inside(n)) cells.push_back(n);
  });
  return CubeComplex(static_cast<int>(lo.size()), std::move(cells));
}

double DyadicDecomposition::max_scale_ratio(int d, uint64_t boundary_faces) const {
  double best = 0.0;
  for (auto [level, count] : counts_by_level)
    best = std::max(best, static_cast<double>(count) * std::ldexp(1.0, level * (d - 1)) /
                              static_cast<double>(boundary_faces));
  return best;
}

std::vector<IntVec> DyadicDecomposition::reconstruct(int) const {
  std::vector<IntVec> plus, minus;
  for (const auto& q : positive) for_each_in_dyadic(q, [&](const IntVec& n) { plus.push_back(n); });
  for (const auto& q : negative) for_each_in_dyadic(q, [&](const IntVec& n) { minus.push_back(n); });
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  std::vector<IntVec> out;
  std::set_difference(plus.begin(), plus.end(), minus.begin(), minus.end(), std::back_inserter(out));
  return out;
}

DyadicDecomposition laczkovich_decompose(const CubeComplex& H) {
  if (H.size() == 0) fail(ErrorKind::EmptyRegion, "cube complex is empty");
  const int d = H.dim();
  IntVec lo = H.cells().front(), hi = lo;
  for (const auto& c : H.cells())
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  // Root anchored at the lower corner: the tree is dyadic relative to lo.
  int64_t extent = 1;
  for (int i = 0; i < d; ++i) extent = std::max(extent, hi[i] - lo[i] + 1);
  int level = 0;
  while ((int64_t{1} << level) < extent)
    if (++level > 60) fail(ErrorKind::Overflow, "cube complex is too large");
  const IntVec& corner = lo;
  Builder b{d, {}};
  b.node(corner, level, std::vector<IntVec>(H.cells()));
  return std::move(b.out);
}

nlohmann::json decomposition_to_json(const DyadicDecomposition& dec, int d, uint64_t boundary_faces) {
  auto cubes = [](const std::vector<DyadicCube>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back({{"corner", q.corner}, {"side", int64_t{1} << q.level}});
    return a;
  };
  nlohmann::json hist = nlohmann::json::array();
  for (auto [level, count] : dec.counts_by_level)
    hist.push_back({{"side", int64_t{1} << level},
                    {"count", count},
                    {"ratio", static_cast<double>(count) * std::ldexp(1.0, level * (d - 1)) /
                                  static_cast<double>(boundary_faces)}});
  return {{"positive", cubes(dec.positive)},
          {"negative", cubes(dec.negative)},
          {"boundary_faces", boundary_faces},
          {"histogram", std::move(hist)}};
}

RegionDiscrepancy region_discrepancy(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                                     std::span<const int64_t> anchor, const CubeComplex& H) {
  if (H.size() == 0) fail(ErrorKind::EmptyRegion, "search region contains no lattice points");
  if (H.dim() != spec.d) fail(ErrorKind::InvalidArgument, "region dimension differs from d");
  const Box target = grid.box(id);
  IntVec p(spec.d);
  auto hit = [&](std::span<const int64_t> n) {
    for (int i = 0; i < spec.d; ++i) p[i] = anchor[i] + n[i];
    return target.contains(window_coord(spec, p)) ? 1 : 0;
  };
  RegionDiscrepancy out;
  out.cells = H.size();
  for (const auto& n : H.cells()) out.direct += hit(n);
  const DyadicDecomposition dec = laczkovich_decompose(H);
  for (const auto& q : dec.positive) for_each_in_dyadic(q, [&](const IntVec& n) { out.dyadic += hit(n); });
  for (const auto& q : dec.negative) for_each_in_dyadic(q, [&](const IntVec& n) { out.dyadic -= hit(n); });
  out.empirical = static_cast<double>(out.direct) / static_cast<double>(out.cells);
  out.exact = target.volume();
  out.deviation = std::abs(out.empirical - out.exact);
  out.bound = static_cast<double>(H.boundary_faces()) / static_cast<double>(out.cells);
  return out;
}

double collar_kappa(const SchemeSpec& spec) {
  return ChartMap(spec).deviation_bound() + 0.5 * std::sqrt(static_cast<double>(spec.d));
}

IntrinsicCount intrinsic_count(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                               std::span<const int64_t> anchor, const ConvexBody& body, double scale) {
  if (body.dim() != spec.d) fail(ErrorKind::InvalidArgument, "region dimension differs from d");
  const CubeComplex xa = cover_region(body, scale);
  if (xa.size() == 0) fail(ErrorKind::EmptyRegion, "search region contains no lattice points");
  const Box target = grid.box(id);
  const ChartMap chart(spec);
  const IntVec q0 = lift(spec, anchor).v;
  IntrinsicCount out;
  out.cells = xa.size();
  out.kappa = collar_kappa(spec);

  const double slack = chart.deviation_bound() + 1.0;
  Box bb = body.bounding_box(scale);
  IntVec lo(spec.d), hi(spec.d);
  for (int i = 0; i < spec.d; ++i) {
    lo[i] = static_cast<int64_t>(std::floor(bb.lo[i] - slack));
    hi[i] = static_cast<int64_t>(std::ceil(bb.hi[i] + slack));
  }
  uint64_t hits = 0, hits_prime = 0;
  IntVec p(spec.d);
  for_each_in_box(lo, hi, [&](const IntVec& n) {
    for (int i = 0; i < spec.d; ++i) p[i] = anchor[i] + n[i];
    const bool in_xa = xa.contains(n);
    LatticeVector m = lift(spec, p);
    for (int j = 0; j < spec.codim(); ++j) m.v[j] -= q0[j];
    m.n = n;
    const bool in_a = body.contains(chart(m), scale);
    if (!in_xa && !in_a) return;
    const bool in_q = target.contains(window_coord(spec, p));
    if (in_xa) hits += in_q;
    if (in_a) {
      ++out.points;
      hits_prime += in_q;
    }
  });
  if (out.points == 0) fail(ErrorKind::EmptyRegion, "no point of Y lies in the search region");
  out.xi = static_cast<double>(hits) / static_cast<double>(out.cells);
  out.xi_prime = static_cast<double>(hits_prime) / static_cast<double>(out.points);
  out.deviation = std::abs(out.xi - out.xi_prime);
  out.collar_bound = 2.0 * body.collar_volume(scale, out.kappa) / static_cast<double>(out.cells);
  return out;
}

}  // namespace cutproj
