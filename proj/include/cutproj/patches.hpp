#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "cutproj/geometry.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

/// Offsets Δq(n) = lift(p+n).q - lift(p).q for n in [-r, r]^d, in
/// for_each_in_cube order. Two anchors have equivalent r-patches iff their
/// patterns compare equal.
struct StaircasePattern {
  int64_t r = 0;
  int d = 0;
  std::vector<IntVec> dq;

  friend bool operator==(const StaircasePattern&, const StaircasePattern&) = default;
  friend auto operator<=>(const StaircasePattern&, const StaircasePattern&) = default;
};

StaircasePattern staircase(const SchemeSpec& spec, std::span<const int64_t> p, double r);

struct PatchShape {
  /// TypeI measures lattice vectors in the projected chart, TypeII by n alone.
  enum class Kind { TypeI, TypeII };
  Kind kind = Kind::TypeII;
  ConvexBody omega = ConvexBody::cube(1, 1.0);
  double r = 1.0;
};

/// All (n, v) with v - L(n) in (-1,1)^{k-d} whose chart lies in r*omega,
/// sorted. Throws UnboundedShape for a degenerate omega.
std::vector<LatticeVector> lattice_candidates(const SchemeSpec& spec, const PatchShape& shape);

/// v - L(n), the lower corner of the unit cube of window points that see m.
RealVec internal_offset(const SchemeSpec& spec, const LatticeVector& m);

/// Candidates realized around the anchor p, i.e. the patch as a set of
/// lattice differences.
std::vector<LatticeVector> extract_patch(const SchemeSpec& spec, std::span<const LatticeVector> candidates,
                                         std::span<const int64_t> p);

struct AcceptanceRegion {
  Box base;
  std::vector<Box> holes;
  std::vector<Box> boxes;

  double volume() const;
  bool contains(std::span<const double> w) const;
};

/// Window coordinates whose patch equals the patch at p. TypeII regions are a
/// single box; TypeI regions subtract the unit cubes of candidates that no
/// realized neighbour already excludes.
AcceptanceRegion acceptance_region(const SchemeSpec& spec, const PatchShape& shape,
                                   std::span<const int64_t> p);
AcceptanceRegion acceptance_region(const SchemeSpec& spec, const PatchShape& shape,
                                   std::span<const LatticeVector> candidates,
                                   std::span<const LatticeVector> members);

/// Disjoint boxes covering base minus the union of holes, by slicing along the
/// last axis and recursing. At most (N+1)^m boxes when base sides are <= 1 and
/// holes are unit cubes.
std::vector<Box> box_minus_cubes_decompose(const Box& base, std::span<const Box> holes);

/// A constant c with P_I((r-c) omega) inside P_II(r omega) inside
/// P_I((r+c) omega): the chart deviation bound over the inradius of omega.
double nesting_constant(const SchemeSpec& spec, const ConvexBody& omega);

nlohmann::json patch_to_json(const PatchShape& shape, std::span<const LatticeVector> members,
                             const AcceptanceRegion& region);

}  // namespace cutproj
