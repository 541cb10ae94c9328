#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cutproj/acceptance.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

/// Raw per-component counts of the orbit w(anchor + n), n in [-h, h]^d.
struct OrbitCounts {
  int64_t h = -1;
  std::vector<uint64_t> counts;
  uint64_t total = 0;
  /// Orbit points within `boundary_tol` of a cut. They are still counted in
  /// the half-open interval they fall into.
  uint64_t boundary_hits = 0;
};

struct CountOptions {
  double boundary_tol = 1e-12;
};

/// Streams the orbit through the SIMD row kernels; never stores points.
OrbitCounts count_components(const SchemeSpec& spec, const RegularGrid& grid,
                             std::span<const int64_t> anchor, double R, const CountOptions& options = {});

/// Extends counts from its current radius to floor(R) by adding shells.
void extend_counts(OrbitCounts& counts, const SchemeSpec& spec, const RegularGrid& grid,
                   std::span<const int64_t> anchor, double R, const CountOptions& options = {});

double empirical_frequency(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                           std::span<const int64_t> anchor, double R);

struct DiscrepancyReport {
  double r = 0.0;
  double R = 0.0;
  /// Component attaining the maximum; empty for an all-zero report.
  std::optional<ComponentId> id;
  double empirical = 0.0;
  double exact = 0.0;
  /// |count - total * exact|, in points.
  double discrepancy = 0.0;
  /// C (log R)^{k+eps} / R^d, comparable with discrepancy / total.
  double bound = 0.0;
  uint64_t total = 0;
  uint64_t boundary_hits = 0;
};

struct BoundCurve {
  double C = 1.0;
  double eps = 0.5;
  double operator()(int k, int d, double R) const;
};

DiscrepancyReport summarize(const SchemeSpec& spec, const RegularGrid& grid, const OrbitCounts& counts,
                            double R, const BoundCurve& curve = {});

/// Max over components of |count - total * frequency| in one binning sweep.
DiscrepancyReport sup_discrepancy(const SchemeSpec& spec, const RegularGrid& grid,
                                  std::span<const int64_t> anchor, double R, const BoundCurve& curve = {});

/// Reports for increasing R, sharing one incremental count.
std::vector<DiscrepancyReport> discrepancy_curve(const SchemeSpec& spec, const RegularGrid& grid,
                                                 std::span<const int64_t> anchor, std::span<const double> Rs,
                                                 const BoundCurve& curve = {});

/// 1 / prod max(1, |h_j|).
double r_weight(std::span<const int64_t> h);

struct EtkOptions {
  /// Constant C_m; nullopt selects 3^m.
  std::optional<double> constant;
};

/// C_m (1/H + sum_{0<|h|<=H} r(h) |(1/N) sum_n e(<h, x_n>)|) for explicit
/// points in [0,1)^m.
double etk_bound(std::span<const RealVec> points, int64_t H, const EtkOptions& options = {});

/// Same bound for the Kronecker orbit w(anchor) + L(n), n in [-N, N]^d, whose
/// exponential sums factor into Dirichlet kernels.
double etk_bound_orbit(const SchemeSpec& spec, int64_t N, int64_t H, const EtkOptions& options = {});

/// theta_i = sum_j h_j alpha(j, i).
RealVec frequency_vector(const SchemeSpec& spec, std::span<const int64_t> h);

struct ExpSum {
  /// |sum_{n in [-N,N]^d} e(<h, L(n)>)|
  double modulus = 0.0;
  /// prod_i (2 ||theta_i||)^{-1}
  double bound = 0.0;
};

/// Throws ResonantFrequency if some ||theta_i|| < tol.
ExpSum exp_sum_closed_form(const SchemeSpec& spec, std::span<const int64_t> h, int64_t N, double tol = 1e-12);

/// sum_{0<|h|<=H} r(h) prod_i ||theta_i||^{-1}.
double log_power_sum(const SchemeSpec& spec, int64_t H, double tol = 1e-12);

/// Header and rows: r,R,component_id,empirical,exact,discrepancy,bound,flags.
void write_report_csv_header(std::ostream& os);
void write_report_csv_row(std::ostream& os, const DiscrepancyReport& rep, const std::string& extra_flags = "");

std::string component_label(const ComponentId& id);

}  // namespace cutproj
