#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cutproj/geometry.hpp"

namespace cutproj {

enum class Precision {
  Double,
  /// Window coordinates accumulated in long double (regression fixtures).
  Extended,
};

struct Tolerances {
  /// A lift is singular when t_j + L_j(p) lies this close to an integer.
  double singular = 1e-12;
  /// Lower bound on |det(I - M L)|.
  double determinant = 1e-12;
};

/// Cubical cut-and-project data. The physical space is the graph of
/// L : R^d -> R^{k-d}, L_j(x) = sum_i alpha(j, i) x_i; the internal space is
/// {(M z, z)}; the window phase is t in [0,1)^{k-d}.
struct SchemeSpec {
  int d = 1;
  int k = 2;
  /// (k-d) x d, row-major.
  std::vector<double> alpha;
  /// d x (k-d), row-major; empty means M = 0.
  std::vector<double> m_map;
  std::vector<double> t;
  std::optional<uint64_t> seed;
  Precision precision = Precision::Double;
  Tolerances tol;

  int codim() const { return k - d; }
  double a(int j, int i) const { return alpha[static_cast<std::size_t>(j) * d + i]; }
  double m(int i, int j) const {
    return m_map.empty() ? 0.0 : m_map[static_cast<std::size_t>(i) * codim() + j];
  }
  bool has_internal_map() const;
};

/// Throws InvalidArgument for malformed data and DegenerateInternalSpace when
/// I - M L is (numerically) singular.
void validate(const SchemeSpec& spec);

/// alpha uniform in [0,1)^{d(k-d)}, t uniform in [0,1)^{k-d}, M = 0.
SchemeSpec random_scheme(int d, int k, uint64_t seed);

/// Reads { "d", "k", "alpha", "m_map"?, "t"?, "seed"? }. Missing alpha or t are
/// drawn from the seed.
SchemeSpec scheme_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const SchemeSpec& spec);

/// FNV-1a hash of the canonical JSON form.
uint64_t scheme_hash(const SchemeSpec& spec);

/// Integer lift (n, v) of a lattice point.
struct LatticeVector {
  IntVec n;
  IntVec v;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

/// t_j + L_j(p), unreduced.
double shifted_form(const SchemeSpec& spec, int j, std::span<const int64_t> p);

/// w(p) = (t + L(p)) mod 1.
RealVec window_coord(const SchemeSpec& spec, std::span<const int64_t> p);

/// (p, floor(t + L(p))). Throws SingularShift on boundary hits.
LatticeVector lift(const SchemeSpec& spec, std::span<const int64_t> p);

/// Coordinates of pi(m) in the E-chart: u = (I - M L)^{-1} (n - M v).
class ChartMap {
 public:
  explicit ChartMap(const SchemeSpec& spec);

  RealVec operator()(std::span<const int64_t> n, std::span<const int64_t> v) const;
  RealVec operator()(const LatticeVector& m) const { return (*this)(m.n, m.v); }

  /// (I - M L)^{-1} M, mapping internal displacement to chart displacement.
  const Eigen::MatrixXd& deviation() const { return deviation_; }
  /// Bound on |chart(m) - n|_2 over lattice vectors with v - L(n) in (-1,1)^{k-d}.
  double deviation_bound() const;
  bool identity() const { return identity_; }

 private:
  int d_;
  int c_;
  bool identity_;
  Eigen::MatrixXd inverse_;
  Eigen::MatrixXd m_;
  Eigen::MatrixXd deviation_;
};

RealVec project_chart(const SchemeSpec& spec, const LatticeVector& m);

struct GeneratedPoint {
  IntVec p;
  IntVec q;
  RealVec w;
};

/// All p in [-R, R]^d, lexicographic order.
std::vector<GeneratedPoint> generate_points(const SchemeSpec& spec, double R);

/// Deterministic uniform doubles in [0,1) from a seed (portable across
/// standard libraries).
class UniformStream {
 public:
  explicit UniformStream(uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cutproj
