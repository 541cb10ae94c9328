#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cutproj/geometry.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

struct GridOptions {
  /// Cut points closer than this are merged.
  double dedup_tol = 1e-10;
  /// Upper limit on the number of components; 0 disables the check.
  uint64_t component_budget = 10'000'000;
};

/// Per-coordinate interval index of a component of reg(r).
struct ComponentId {
  std::vector<uint32_t> idx;

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

/// The partition of the window [0,1)^{k-d} cut by the translated window
/// boundaries frac(L_j(p)), |p| <= r. Components are the half-open product
/// boxes between consecutive cuts; the last interval of every coordinate ends
/// at 1 and is not merged with the first (0 is always a cut).
class RegularGrid {
 public:
  RegularGrid(double r, std::vector<std::vector<double>> cuts, double dedup_tol);

  double r() const { return r_; }
  int dim() const { return static_cast<int>(cuts_.size()); }
  double dedup_tol() const { return dedup_tol_; }

  /// Sorted cuts of coordinate j, starting at 0.
  std::span<const double> cuts(int j) const;
  /// cuts(j) followed by the sentinel 1.0.
  std::span<const double> padded_cuts(int j) const { return padded_[j]; }

  uint64_t component_count() const { return count_; }
  /// Row-major mixed radix index, last coordinate fastest.
  uint64_t flat_index(const ComponentId& id) const;
  uint64_t stride(int j) const { return strides_[j]; }
  ComponentId unflatten(uint64_t flat) const;
  Box box(const ComponentId& id) const;
  void check(const ComponentId& id) const;

 private:
  double r_;
  double dedup_tol_;
  std::vector<std::vector<double>> padded_;
  std::vector<uint64_t> strides_;
  uint64_t count_ = 1;
  std::vector<std::vector<double>> cuts_;
};

/// Throws TooManyComponents when the component count exceeds the budget.
RegularGrid build_grid(const SchemeSpec& spec, double r, const GridOptions& options = {});

/// Throws SingularPoint if w lies within dedup_tol of a cut (or of 1).
ComponentId component_of(const RegularGrid& grid, std::span<const double> w);

/// Component volume; equals the patch frequency of the matching class.
double frequency(const RegularGrid& grid, const ComponentId& id);

/// Smallest side over all coordinates, wrap gap to 1 included.
double min_side(const RegularGrid& grid);
/// Largest side over all coordinates.
double max_side(const RegularGrid& grid);

/// One row per coordinate listing its cuts, then a summary row.
void write_grid_csv(std::ostream& os, const RegularGrid& grid);

}  // namespace cutproj
