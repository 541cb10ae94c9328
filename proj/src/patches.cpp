#include "cutproj/patches.hpp"

#include <algorithm>
#include <cmath>

#include "cutproj/error.hpp"

namespace cutproj {

namespace {

Box unit_cube_at(const RealVec& corner) {
  Box b{corner, corner};
  for (double& x : b.hi) x += 1.0;
  return b;
}

Box window_box(int m) { return Box{RealVec(m, 0.0), RealVec(m, 1.0)}; }

// Slab pieces along the last axis with identical cross sections are merged.
std::vector<Box> decompose(const Box& base, const std::vector<Box>& holes) {
  if (holes.empty()) return {base};
  const int m = base.dim();
  const int ax = m - 1;
  if (m == 1) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& h : holes) iv.emplace_back(h.lo[0], h.hi[0]);
    std::sort(iv.begin(), iv.end());
    std::vector<Box> out;
    double cur = base.lo[0];
    for (auto [a, b] : iv) {
      if (a > cur) out.push_back(Box{{cur}, {a}});
      cur = std::max(cur, b);
    }
    if (cur < base.hi[0]) out.push_back(Box{{cur}, {base.hi[0]}});
    return out;
  }
  std::vector<double> cuts{base.lo[ax], base.hi[ax]};
  for (const auto& h : holes) {
    cuts.push_back(h.lo[ax]);
    cuts.push_back(h.hi[ax]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Box face{RealVec(base.lo.begin(), base.lo.end() - 1), RealVec(base.hi.begin(), base.hi.end() - 1)};
  std::vector<Box> out;
  std::vector<Box> prev_section;
  std::size_t prev_begin = 0;
  bool have_prev = false;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    std::vector<Box> sub;
    for (const auto& h : holes)
      if (h.lo[ax] <= a && h.hi[ax] >= b)
        sub.push_back(Box{RealVec(h.lo.begin(), h.lo.end() - 1), RealVec(h.hi.begin(), h.hi.end() - 1)});
    std::vector<Box> section = decompose(face, sub);
    if (have_prev && section == prev_section) {
      for (std::size_t i = prev_begin; i < out.size(); ++i) out[i].hi[ax] = b;
      continue;
    }
    prev_begin = out.size();
    for (const auto& c : section) {
      Box full = c;
      full.lo.push_back(a);
      full.hi.push_back(b);
      out.push_back(std::move(full));
    }
    prev_section = std::move(section);
    have_prev = true;
  }
  return out;
}

}  // namespace

StaircasePattern staircase(const SchemeSpec& spec, std::span<const int64_t> p, double r) {
  if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "r must be non-negative");
  StaircasePattern pat;
  pat.r = static_cast<int64_t>(std::floor(r));
  pat.d = spec.d;
  const IntVec q0 = lift(spec, p).v;
  IntVec y(spec.d);
  for_each_in_cube(spec.d, pat.r, [&](const IntVec& n) {
    for (int i = 0; i < spec.d; ++i) y[i] = p[i] + n[i];
    IntVec q = lift(spec, y).v;
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= q0[j];
    pat.dq.push_back(std::move(q));
  });
  return pat;
}

RealVec internal_offset(const SchemeSpec& spec, const LatticeVector& m) {
  RealVec s(spec.codim());
  for (int j = 0; j < spec.codim(); ++j) {
    double ln = 0.0;
    for (int i = 0; i < spec.d; ++i) ln = ln + spec.a(j, i) * static_cast<double>(m.n[i]);
    s[j] = static_cast<double>(m.v[j]) - ln;
  }
  return s;
}

std::vector<LatticeVector> lattice_candidates(const SchemeSpec& spec, const PatchShape& shape) {
  shape.omega.validate_bounded();
  if (shape.omega.dim() != spec.d) fail(ErrorKind::InvalidArgument, "shape dimension differs from d");
  if (!(shape.r >= 0.0) || !std::isfinite(shape.r)) fail(ErrorKind::UnboundedShape, "scale must be finite");
  const int d = spec.d, c = spec.codim();
  const bool type_i = shape.kind == PatchShape::Kind::TypeI;
  const ChartMap chart(spec);
  const double slack = type_i ? chart.deviation_bound() : 0.0;
  Box bb = shape.omega.bounding_box(shape.r);
  IntVec lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = static_cast<int64_t>(std::floor(bb.lo[i] - slack - 1e-9));
    hi[i] = static_cast<int64_t>(std::ceil(bb.hi[i] + slack + 1e-9));
  }
  std::vector<LatticeVector> out;
  IntVec v(c);
  std::vector<int64_t> vlo(c), vhi(c);
  for_each_in_box(lo, hi, [&](const IntVec& n) {
    if (!type_i) {
      RealVec u(n.begin(), n.end());
      if (!shape.omega.contains(u, shape.r)) return;
    }
    for (int j = 0; j < c; ++j) {
      double ln = 0.0;
      for (int i = 0; i < d; ++i) ln = ln + spec.a(j, i) * static_cast<double>(n[i]);
      vlo[j] = static_cast<int64_t>(std::floor(ln));
      vhi[j] = static_cast<int64_t>(std::ceil(ln));
    }
    for_each_in_box(vlo, vhi, [&](const IntVec& vv) {
      LatticeVector m{n, vv};
      RealVec s = internal_offset(spec, m);
      for (double x : s)
        if (!(x > -1.0 && x < 1.0)) return;
      if (type_i && !shape.omega.contains(chart(m), shape.r)) return;
      out.push_back(std::move(m));
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> extract_patch(const SchemeSpec& spec, std::span<const LatticeVector> candidates,
                                         std::span<const int64_t> p) {
  const IntVec q0 = lift(spec, p).v;
  std::vector<LatticeVector> out;
  IntVec y(spec.d);
  for (const auto& m : candidates) {
    for (int i = 0; i < spec.d; ++i) y[i] = p[i] + m.n[i];
    IntVec q = lift(spec, y).v;
    bool hit = true;
    for (int j = 0; j < spec.codim(); ++j) hit = hit && q[j] - q0[j] == m.v[j];
    if (hit) out.push_back(m);
  }
  return out;
}

double AcceptanceRegion::volume() const {
  double v = 0.0;
  for (const auto& b : boxes) v += b.volume();
  return v;
}

bool AcceptanceRegion::contains(std::span<const double> w) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(w); });
}

AcceptanceRegion acceptance_region(const SchemeSpec& spec, const PatchShape& shape,
                                   std::span<const LatticeVector> candidates,
                                   std::span<const LatticeVector> members) {
  const int c = spec.codim();
  AcceptanceRegion region;
  region.base = window_box(c);
  for (const auto& m : members) region.base = region.base.intersect(unit_cube_at(internal_offset(spec, m)));
  if (region.base.empty(0.0))
    fail(ErrorKind::EmptyRegion, "the realized candidates have no common window point");

  if (shape.kind == PatchShape::Kind::TypeI) {
    // An unrealized candidate sharing n with a realized one differs from it by
    // a nonzero integer internal offset, so its cube is already disjoint from
    // the base. Only n with no realized lift contribute holes.
    std::vector<IntVec> realized_n;
    for (const auto& m : members) realized_n.push_back(m.n);
    std::sort(realized_n.begin(), realized_n.end());
    for (const auto& m : candidates) {
      if (std::binary_search(members.begin(), members.end(), m)) continue;
      if (std::binary_search(realized_n.begin(), realized_n.end(), m.n)) continue;
      Box h = unit_cube_at(internal_offset(spec, m)).intersect(region.base);
      if (!h.empty(0.0)) region.holes.push_back(h);
    }
  }
  region.boxes = box_minus_cubes_decompose(region.base, region.holes);
  if (region.boxes.empty()) fail(ErrorKind::EmptyRegion, "holes cover the base box");
  return region;
}

AcceptanceRegion acceptance_region(const SchemeSpec& spec, const PatchShape& shape,
                                   std::span<const int64_t> p) {
  auto candidates = lattice_candidates(spec, shape);
  auto members = extract_patch(spec, candidates, p);
  return acceptance_region(spec, shape, candidates, members);
}

std::vector<Box> box_minus_cubes_decompose(const Box& base, std::span<const Box> holes) {
  if (base.empty(0.0)) return {};
  std::vector<Box> clipped;
  for (const auto& h : holes) {
    Box c = h.intersect(base);
    if (!c.empty(0.0)) clipped.push_back(std::move(c));
  }
  return decompose(base, clipped);
}

double nesting_constant(const SchemeSpec& spec, const ConvexBody& omega) {
  const double rho = omega.inradius_about_origin();
  if (!(rho > 0.0)) fail(ErrorKind::UnboundedShape, "omega must contain a ball about the origin");
  return ChartMap(spec).deviation_bound() / rho;
}

nlohmann::json patch_to_json(const PatchShape& shape, std::span<const LatticeVector> members,
                             const AcceptanceRegion& region) {
  nlohmann::json pattern = nlohmann::json::array();
  for (const auto& m : members) {
    nlohmann::json row = nlohmann::json::array();
    for (auto x : m.n) row.push_back(x);
    for (auto x : m.v) row.push_back(x);
    pattern.push_back(std::move(row));
  }
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : region.boxes) boxes.push_back(to_json(b));
  return {{"shape",
           {{"kind", shape.kind == PatchShape::Kind::TypeI ? "typeI" : "typeII"},
            {"omega", shape.omega.to_json()},
            {"r", shape.r}}},
          {"pattern", std::move(pattern)},
          {"acceptance",
           {{"base", to_json(region.base)}, {"holes", region.holes.size()}, {"boxes", std::move(boxes)}}}};
}

}  // namespace cutproj
