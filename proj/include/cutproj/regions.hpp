#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "cutproj/acceptance.hpp"
#include "cutproj/geometry.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

/// Finite union of unit cells; cell n covers [n, n+1)^d in corner
/// coordinates (a shift of the centred cubes [-1/2, 1/2]^d + n).
class CubeComplex {
 public:
  CubeComplex(int d, std::vector<IntVec> cells);

  int dim() const { return d_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<IntVec>& cells() const { return cells_; }
  bool contains(std::span<const int64_t> n) const;
  /// Number of unit faces shared with no other cell.
  uint64_t boundary_faces() const;

 private:
  int d_;
  std::vector<IntVec> cells_;
};

/// Integer points of scale * body. Throws UnboundedRegion.
CubeComplex cover_region(const ConvexBody& body, double scale = 1.0);
/// Integer points n in [lo, hi] with inside(n).
CubeComplex cover_region(std::span<const int64_t> lo, std::span<const int64_t> hi,
                         const std::function<bool(std::span<const int64_t>)>& inside);

struct DyadicCube {
  IntVec corner;
  /// Side length 2^level.
  int level = 0;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

struct DyadicDecomposition {
  std::vector<DyadicCube> positive;
  std::vector<DyadicCube> negative;
  /// level -> number of cubes of either sign.
  std::map<int, uint64_t> counts_by_level;

  /// max over levels of count * 2^{level (d-1)} / |boundary|.
  double max_scale_ratio(int d, uint64_t boundary_faces) const;
  /// Cells covered by the positives and not by the negatives, sorted.
  std::vector<IntVec> reconstruct(int d) const;
};

/// Quadtree from the smallest aligned dyadic cube around H: a node at least
/// half full becomes a positive cube, with its missing cells covered by
/// maximal dyadic negatives; emptier nodes split into their 2^d children.
DyadicDecomposition laczkovich_decompose(const CubeComplex& H);

nlohmann::json decomposition_to_json(const DyadicDecomposition& dec, int d, uint64_t boundary_faces);

struct RegionDiscrepancy {
  uint64_t cells = 0;
  /// Hits of the component counted over X_A directly.
  int64_t direct = 0;
  /// The same count as a signed sum over the dyadic cubes.
  int64_t dyadic = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double deviation = 0.0;
  /// |boundary H| / #X_A
  double bound = 0.0;
};

/// Throws EmptyRegion for an empty complex.
RegionDiscrepancy region_discrepancy(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                                     std::span<const int64_t> anchor, const CubeComplex& H);

struct IntrinsicCount {
  uint64_t cells = 0;
  uint64_t points = 0;
  double xi = 0.0;
  double xi_prime = 0.0;
  double kappa = 0.0;
  /// 2 |N_kappa(boundary A)| / #X_A
  double collar_bound = 0.0;
  double deviation = 0.0;
};

/// Chart displacement bound plus half a cell diagonal; every lattice point
/// whose chart position and integer part lie on opposite sides of the
/// boundary has its unit cell inside the kappa-collar.
double collar_kappa(const SchemeSpec& spec);

/// Compares the count over X_A with the count over points of Y whose chart
/// position lies in scale * body.
IntrinsicCount intrinsic_count(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                               std::span<const int64_t> anchor, const ConvexBody& body, double scale = 1.0);

}  // namespace cutproj
