#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cutproj/acceptance.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

struct RepetitivityOptions {
  /// Start points per window coordinate.
  int64_t density = 1000;
  /// Largest orbit radius scanned before BudgetExceeded.
  int64_t cap = 1'000'000;
  GridOptions grid;
};

struct RepetitivityEstimate {
  /// max over grid starts of the least N whose orbit meets every component.
  int64_t lower = 0;
  /// An N valid for every start in the window: each start cell is scanned
  /// against components eroded by half the cell width. Empty when some
  /// component is thinner than a cell.
  std::optional<int64_t> upper;
  int64_t density = 0;
};

RepetitivityEstimate repetitivity(const SchemeSpec& spec, double r, const RepetitivityOptions& options = {});

struct RepulsivityResult {
  double value = 0.0;
  IntVec p;
  IntVec p2;
};

/// Least chart distance between distinct p, p' in [-N_scan, N_scan]^d whose
/// window coordinates share a component of reg(r). Throws NoRecurrence.
RepulsivityResult repulsivity(const SchemeSpec& spec, double r, int64_t n_scan, const GridOptions& grid = {});

/// For d = 1, k = 2 and M = 0: the smallest convergent denominator q with
/// ||q alpha|| below the widest component of reg(r).
int64_t repulsivity_cf_prediction(const SchemeSpec& spec, double r, const GridOptions& grid = {});

struct CurveSample {
  double r = 0.0;
  double value = 0.0;
};

struct RegularityCurve {
  enum class Kind { Repetitivity, Repulsivity };
  Kind kind = Kind::Repetitivity;
  std::string method;
  std::string parameters;
  std::vector<CurveSample> samples;
};

/// Rows: r,value,method,parameters.
void write_curve_csv(std::ostream& os, const RegularityCurve& curve, bool header = true);

}  // namespace cutproj
